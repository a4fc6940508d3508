//! Reference character tables for the built-in families, n = 3..6.

pub const MAXWELL: [(usize, &str); 4] = [
    (3, "9[0,2,3]3+1"),
    (4, "14[0,1,3,5]4+1"),
    (5, "20[0,1,2,4,7]5+1"),
    (6, "27[0,1,2,3,5,9]6+1"),
];

pub const SU2_YANG_MILLS: [(usize, &str); 4] = [
    (3, "21[0,6,9]3+3"),
    (4, "34[0,3,9,15]4+3"),
    (5, "50[0,3,6,12,21]5+3"),
    (6, "69[0,3,6,9,15,27]6+3"),
];

/// The contact oracle's table.
pub const CONTACT: &str = "5[1,1]2+1";
