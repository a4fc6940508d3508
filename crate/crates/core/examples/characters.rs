//! Compute a character table through the library API.
//!
//! cargo run --release --example characters

use eds_core::cartan::{compute_characters_multi, CharacterOptions};
use eds_core::chart::Metric;
use eds_core::models;

fn main() {
    let n = 4;
    let eds = models::build_su2_yang_mills(n, &Metric::lorentz_time_last(n)).unwrap();
    let table = compute_characters_multi(&eds, &[1, 2, 3], &CharacterOptions::default()).unwrap();
    println!(
        "SU(2) Yang-Mills, n = {n}: {}  (N = {}, gauge freedom {}, agreement {})",
        table.notation(),
        table.dim,
        table.gauge,
        table.agreement
    );
}
