//! The three commands: `chars`, `verify`, `table1`.

use crate::exit_code;
use crate::golden;
use crate::record::{CheckRecord, ConfigRecord, RunRecord, TableRecord, ToolInfo};
use eds_core::cartan::{self, CharacterOptions, PointMode};
use eds_core::chart::Metric;
use eds_core::dsl;
use eds_core::eds::{Budget, CertificateStatus, EDSystem, PointwiseVerdict};
use eds_core::error::EdsError;
use eds_core::models::{self, Family, ModelSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt::Write as _;
use std::path::PathBuf;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    /// diag(+1, ..., +1, -1), the default.
    MostlyPlus,
    /// diag(-1, ..., -1, +1).
    MostlyMinus,
}

impl Signature {
    pub fn metric(&self, n: usize) -> Metric {
        match self {
            Signature::MostlyPlus => Metric::lorentz_time_last(n),
            Signature::MostlyMinus => Metric::lorentz_time_last(n).negated(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Signature::MostlyPlus => "mostly-plus",
            Signature::MostlyMinus => "mostly-minus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl OutputFormat {
    pub fn label(&self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        }
    }
}

#[derive(Debug, Clone)]
pub enum ModelChoice {
    Builtin { family: Family, n: usize },
    File(PathBuf),
}

/// Everything a command needs; mirrors the CLI flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub choice: ModelChoice,
    pub seed: u64,
    pub trials: usize,
    pub range: i64,
    pub modular_check: bool,
    pub signature: Signature,
    pub point_mode: PointMode,
    pub budget: u64,
    pub format: OutputFormat,
}

/// A completed command: the structured record, rendered text, exit status.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub record: RunRecord,
    pub text: String,
    pub exit: i32,
}

/// A command that could not produce a record at all.
#[derive(Debug, Clone)]
pub struct Failure {
    pub exit: i32,
    pub message: String,
}

impl RunConfig {
    fn seeds(&self) -> Vec<u64> {
        (0..self.trials as u64)
            .map(|i| self.seed.wrapping_add(i))
            .collect()
    }

    fn character_options(&self) -> CharacterOptions {
        CharacterOptions {
            range: self.range,
            modular_check: self.modular_check,
            point_mode: self.point_mode,
            ..CharacterOptions::default()
        }
    }

    fn budget(&self) -> Budget {
        Budget::new(self.budget as u128)
    }

    fn config_record(&self, command: &str) -> ConfigRecord {
        let (model, n, eds_path) = match &self.choice {
            ModelChoice::Builtin { family, n } => (Some(family.key().to_string()), Some(*n), None),
            ModelChoice::File(path) => (None, None, Some(path.display().to_string())),
        };
        let _ = command;
        ConfigRecord {
            model,
            n,
            eds_path,
            seeds: self.seeds(),
            trials: self.trials,
            range: self.range,
            modular_check: self.modular_check,
            signature: self.signature.label().into(),
            point_mode: match self.point_mode {
                PointMode::RandomInt => "random-int".into(),
                PointMode::Primes => "primes".into(),
            },
            budget: self.budget,
            format: self.format.label().into(),
        }
    }
}

struct Loaded {
    eds: EDSystem,
    label: String,
    /// Present for the built-in gauge families.
    model: Option<ModelSpec>,
    /// The family when built-in (contact included).
    family: Option<Family>,
}

fn load_system(cfg: &RunConfig) -> Result<Loaded, Failure> {
    match &cfg.choice {
        ModelChoice::Builtin { family, n } => {
            let spec = ModelSpec::new(*family, *n, cfg.signature.metric((*n).max(1)));
            let eds = models::build(&spec).map_err(|e| Failure {
                exit: exit_code::MODEL,
                message: format!("cannot build model: {e}"),
            })?;
            let label = match family {
                Family::Contact => family.key().to_string(),
                _ => format!("{} n={n}", family.key()),
            };
            let model =
                matches!(family, Family::Maxwell | Family::Su2YangMills).then(|| spec.clone());
            Ok(Loaded {
                eds,
                label,
                model,
                family: Some(*family),
            })
        }
        ModelChoice::File(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                exit: exit_code::PARSE,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            let eds = dsl::parse(&text).map_err(|e| Failure {
                exit: exit_code::PARSE,
                message: format!("{}: {e}", path.display()),
            })?;
            Ok(Loaded {
                eds,
                label: path
                    .file_name()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string()),
                model: None,
                family: None,
            })
        }
    }
}

/// `chars`: compute the character table over the configured seeds.
pub fn cmd_chars(cfg: &RunConfig) -> Result<CommandOutput, Failure> {
    let loaded = load_system(cfg)?;
    let seeds = cfg.seeds();
    let table =
        match cartan::compute_characters_multi(&loaded.eds, &seeds, &cfg.character_options()) {
            Ok(t) => t,
            Err(e) => return Err(trial_failure(e)),
        };
    let mut text = String::new();
    writeln!(text, "{}", table.notation()).unwrap();
    writeln!(
        text,
        "model {}: N={} n={} trials={} seeds={:?} agreement={} cartan_ok={}",
        loaded.label,
        table.dim,
        table.n,
        table.trials,
        table.seeds,
        table.agreement,
        table.cartan_ok
    )
    .unwrap();
    let exit = if !table.agreement {
        exit_code::DISAGREEMENT
    } else if !table.cartan_ok {
        exit_code::CHECK_FAILED
    } else {
        exit_code::OK
    };
    let record = RunRecord {
        tool: ToolInfo::default(),
        command: "chars".into(),
        config: cfg.config_record("chars"),
        results: vec![TableRecord::from_table(&loaded.label, &table)],
        checks: Vec::new(),
    };
    Ok(CommandOutput { record, text, exit })
}

fn trial_failure(e: EdsError) -> Failure {
    let exit = match &e {
        EdsError::GenusDeficit { .. } => exit_code::CHECK_FAILED,
        EdsError::TrialFailed { source, .. }
            if matches!(**source, EdsError::GenusDeficit { .. }) =>
        {
            exit_code::CHECK_FAILED
        }
        _ => exit_code::INTERNAL,
    };
    Failure {
        exit,
        message: format!("character computation failed: {e}"),
    }
}

/// `verify`: closure certificates, model identities, pointwise closure and
/// Cauchy dimension within budget.
pub fn cmd_verify(cfg: &RunConfig) -> Result<CommandOutput, Failure> {
    let loaded = load_system(cfg)?;
    let eds = &loaded.eds;
    let budget = cfg.budget();
    let mut checks: Vec<CheckRecord> = Vec::new();

    for c in eds.closure_check_certificate() {
        let name = format!("closure[{}]", c.generator);
        checks.push(match c.status {
            CertificateStatus::Verified => CheckRecord::pass(name, "residual 0"),
            CertificateStatus::Failed(residual) => CheckRecord::fail(
                name,
                format!("nonzero residual with {} terms", residual.terms().count()),
            ),
            CertificateStatus::Unverified => {
                CheckRecord::unverified(name, "no certificate; d(g) not trivially in the system")
            }
        });
    }

    if let Some(spec) = &loaded.model {
        match models::essential_identities(spec) {
            Ok(identities) => {
                for ic in identities {
                    let name = format!("identity[{}]", ic.name);
                    checks.push(if ic.ok {
                        CheckRecord::pass(name, "expanded to 0")
                    } else {
                        CheckRecord::fail(name, "nonzero expansion")
                    });
                }
            }
            Err(e) => checks.push(CheckRecord::fail("identity[build]", e.to_string())),
        }
        match models::cartan_poincare(spec) {
            Ok(cp) => {
                let name = "cartan_poincare[dL = theta^a ^ psi_a]";
                checks.push(if cp.holds() {
                    CheckRecord::pass(name, "residual 0")
                } else {
                    CheckRecord::fail(name, "nonzero residual")
                });
            }
            Err(e) => checks.push(CheckRecord::fail("cartan_poincare[build]", e.to_string())),
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let point = eds_core::eds::random_point(eds.chart(), &mut rng, cfg.range);
    match eds.closure_check_pointwise(&point, &budget) {
        Ok(list) => {
            for c in list {
                let name = format!("pointwise_closure[{}]", c.generator);
                checks.push(match c.verdict {
                    PointwiseVerdict::Member => CheckRecord::pass(name, "ideal member"),
                    PointwiseVerdict::NotMember => {
                        CheckRecord::fail(name, "d(g) escapes the ideal at a generic point")
                    }
                    PointwiseVerdict::Skipped { needed, limit } => CheckRecord::skipped(
                        name,
                        format!("budget: basis size {needed} > {limit}; rely on certificates"),
                    ),
                });
            }
        }
        Err(e) => checks.push(CheckRecord::fail("pointwise_closure", e.to_string())),
    }

    let mut cauchy_dims = Vec::new();
    let mut cauchy_skip = None;
    for _ in 0..3 {
        let p = eds_core::eds::random_point(eds.chart(), &mut rng, cfg.range);
        match eds.cauchy_space_dim(&p, &budget) {
            Ok(d) => cauchy_dims.push(d),
            Err(EdsError::BudgetExceeded { needed, limit, .. }) => {
                cauchy_skip = Some((needed, limit));
                break;
            }
            Err(e) => {
                checks.push(CheckRecord::fail("cauchy_dim", e.to_string()));
                break;
            }
        }
    }
    if let Some((needed, limit)) = cauchy_skip {
        checks.push(CheckRecord::skipped(
            "cauchy_dim",
            format!("budget: basis size {needed} > {limit}"),
        ));
    } else if !cauchy_dims.is_empty() {
        let detail = format!(
            "dimension {cauchy_dims:?} at {} random points",
            cauchy_dims.len()
        );
        let expect_zero = loaded.family.is_some();
        if expect_zero {
            checks.push(if cauchy_dims.iter().all(|&d| d == 0) {
                CheckRecord::pass("cauchy_dim", detail)
            } else {
                CheckRecord::fail("cauchy_dim", detail)
            });
        } else {
            checks.push(CheckRecord::info("cauchy_dim", detail));
        }
    }

    let mut text = String::new();
    writeln!(text, "verify {}", loaded.label).unwrap();
    for c in &checks {
        writeln!(text, "  {:<10} {}  ({})", c.status, c.name, c.detail).unwrap();
    }
    let failed = checks.iter().filter(|c| c.is_fail()).count();
    let exit = if failed > 0 {
        writeln!(text, "{failed} check(s) failed").unwrap();
        exit_code::CHECK_FAILED
    } else {
        writeln!(text, "all applicable checks pass").unwrap();
        exit_code::OK
    };
    let record = RunRecord {
        tool: ToolInfo::default(),
        command: "verify".into(),
        config: cfg.config_record("verify"),
        results: Vec::new(),
        checks,
    };
    Ok(CommandOutput { record, text, exit })
}

/// Options for `table1` (model selection is fixed: both families, n = 3..6).
#[derive(Debug, Clone)]
pub struct Table1Config {
    pub seed: u64,
    pub trials: usize,
    pub range: i64,
    pub signature: Signature,
    pub format: OutputFormat,
}

impl Default for Table1Config {
    fn default() -> Self {
        Table1Config {
            seed: 1,
            trials: 3,
            range: 10,
            signature: Signature::MostlyPlus,
            format: OutputFormat::Text,
        }
    }
}

/// `table1`: compute all eight reference rows and compare exactly.
///
/// Every polar rank is cross-checked against three random 20+ bit primes.
pub fn cmd_table1(cfg: &Table1Config) -> Result<CommandOutput, Failure> {
    let seeds: Vec<u64> = (0..cfg.trials as u64)
        .map(|i| cfg.seed.wrapping_add(i))
        .collect();
    let opts = CharacterOptions {
        range: cfg.range,
        modular_check: true,
        ..CharacterOptions::default()
    };
    let mut results = Vec::new();
    let mut checks = Vec::new();
    let mut text = String::new();
    let mut mismatches = 0usize;
    let mut disagreements = 0usize;

    for (family, block_title, rows) in [
        (
            Family::Maxwell,
            "Maxwell characters in n dimensions",
            &golden::MAXWELL,
        ),
        (
            Family::Su2YangMills,
            "SU(2)-Yang-Mills characters in n dimensions",
            &golden::SU2_YANG_MILLS,
        ),
    ] {
        writeln!(text, "{block_title}").unwrap();
        for &(n, want) in rows.iter() {
            let spec = ModelSpec::new(family, n, cfg.signature.metric(n));
            let eds = models::build(&spec).map_err(|e| Failure {
                exit: exit_code::MODEL,
                message: format!("cannot build {} n={n}: {e}", family.key()),
            })?;
            let table =
                cartan::compute_characters_multi(&eds, &seeds, &opts).map_err(trial_failure)?;
            let got = table.notation();
            let label = format!("{} n={n}", family.key());
            let ok = got == want && table.agreement;
            if got != want {
                mismatches += 1;
            }
            if !table.agreement {
                disagreements += 1;
            }
            writeln!(
                text,
                "{:>22}  {}",
                got,
                if ok {
                    "ok".to_string()
                } else {
                    format!("MISMATCH (expected {want}, agreement={})", table.agreement)
                }
            )
            .unwrap();
            checks.push(if ok {
                CheckRecord::pass(format!("table1[{label}]"), format!("{got} matches"))
            } else {
                CheckRecord::fail(
                    format!("table1[{label}]"),
                    format!(
                        "expected {want}, computed {got}, agreement={}",
                        table.agreement
                    ),
                )
            });
            results.push(TableRecord::from_table(label, &table));
        }
        writeln!(text).unwrap();
    }

    let matched = 8 - mismatches;
    writeln!(text, "{matched}/8 rows match the reference tables").unwrap();
    let exit = if disagreements > 0 {
        exit_code::DISAGREEMENT
    } else if mismatches > 0 {
        exit_code::CHECK_FAILED
    } else {
        exit_code::OK
    };
    let record = RunRecord {
        tool: ToolInfo::default(),
        command: "table1".into(),
        config: ConfigRecord {
            model: None,
            n: None,
            eds_path: None,
            seeds,
            trials: cfg.trials,
            range: cfg.range,
            modular_check: true,
            signature: cfg.signature.label().into(),
            point_mode: "random-int".into(),
            budget: Budget::default().limit as u64,
            format: cfg.format.label().into(),
        },
        results,
        checks,
    };
    Ok(CommandOutput { record, text, exit })
}

/// Render a completed command per the configured format.
pub fn render(output: &CommandOutput, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => output.text.clone(),
        OutputFormat::Json => {
            serde_json::to_string_pretty(&output.record).expect("serializable record")
        }
    }
}
