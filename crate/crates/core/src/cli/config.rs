//! Config grammar.
//!
//! A config is a TOML document: `key = value` pairs grouped under
//! `[section]` headers, arrays in brackets, `#` comments. Recognised keys:
//!
//! ```toml
//! experiment = "simulate"   # simulate | sweep-alpha | operator-tests
//!                           # | estimates-report | dirichlet-sweep
//! seed = 7                  # default 0; recorded in every artifact
//!
//! [domain]
//! n = 64                    # required: power of two, >= 16
//! box = 6.283185307179586   # default 2π (torus) or π (dirichlet)
//! basis = "torus"           # torus | dirichlet
//!
//! [params]
//! kappa = 0.01              # required for time evolution
//! alpha = 0.75              # required for simulate, in (1/2, 1]
//! lambda = 0.0
//!
//! [forcing]
//! kind = "none"             # none | mode | stationary
//! k = [1, 2]                # mode: wave vector
//! amplitude = 0.1           # mode: sup norm of the forcing
//!
//! [stepper]
//! t_end = 1.0               # required for time evolution
//! dt = 0.01                 # default 0.5·(L/n)/max(1, max|u₀|)
//! sample_every = 1
//! scheme = "etd2rk"         # etd2rk | etd1
//! cfl_abort = false
//!
//! [initial]
//! kind = "random-smooth"    # random-smooth | shear | gaussian-bump | file
//! amplitude = 1.0           # sup norm of θ₀ (default 1; 0.05 for sweeps)
//! decay = 3.0               # random-smooth: |θ̂(k)| ∝ (1 + |k|)^(−decay)
//! center = [3.14, 3.14]     # gaussian-bump, default box center
//! width = 0.5               # gaussian-bump
//! path = "theta0.txt"       # file: n rows of n physical values
//!
//! [monitors]
//! q = [2, 4, 8]             # Lq norms (q >= 2, inf allowed)
//! sobolev = [-0.5, 1.5]     # H^s norms
//! tail = [1.0]              # cutoff radii k <= L/4
//!
//! [sweep]
//! alphas = [0.75, 0.65, 0.6, 0.55, 0.52, 0.51]
//!
//! [operator]
//! laplacian_n = 32
//! spd_n = 16
//! cond = 1000.0
//! trials = 1000
//!
//! [estimates]
//! fields = 50
//! alphas = [0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
//! q = [2, 3, 4, 8]
//!
//! [output]
//! dir = "out/run"          # relative to this file
//! ```

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use toml::de::{DeTable, DeValue};
use toml::Spanned;

use crate::critical::DEFAULT_ALPHAS;
use crate::dynamics::Scheme;
use crate::error::{Error, Result};
use crate::spectral::{Basis, DomainSpec};

/// One problem in a config file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Experiment {
    Simulate,
    SweepAlpha,
    OperatorTests,
    EstimatesReport,
    DirichletSweep,
}

impl Experiment {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "simulate" => Self::Simulate,
            "sweep-alpha" => Self::SweepAlpha,
            "operator-tests" => Self::OperatorTests,
            "estimates-report" => Self::EstimatesReport,
            "dirichlet-sweep" => Self::DirichletSweep,
            _ => return None,
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Simulate => "simulate",
            Self::SweepAlpha => "sweep-alpha",
            Self::OperatorTests => "operator-tests",
            Self::EstimatesReport => "estimates-report",
            Self::DirichletSweep => "dirichlet-sweep",
        }
    }

    fn evolves(&self) -> bool {
        matches!(self, Self::Simulate | Self::SweepAlpha | Self::DirichletSweep)
    }

    fn sweeps(&self) -> bool {
        matches!(self, Self::SweepAlpha | Self::DirichletSweep)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum InitialCondition {
    RandomSmooth { amplitude: f64, decay: f64 },
    Shear { amplitude: f64 },
    GaussianBump { center: Option<(f64, f64)>, width: f64, amplitude: f64 },
    File { path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ForcingSpec {
    None,
    /// `amplitude·cos(k·x)`, scaled to that sup norm
    Mode { k: (i64, i64), amplitude: f64 },
    /// `f = κ(−Δ)^α θ₀ + λθ₀`, steady whenever θ₀ is a steady transport state
    Stationary,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonitorSpec {
    pub q: Vec<f64>,
    pub sobolev: Vec<f64>,
    pub tail: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorSpec {
    pub laplacian_n: usize,
    pub spd_n: usize,
    pub cond: f64,
    pub trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimatesSpec {
    pub fields: usize,
    pub alphas: Vec<f64>,
    pub q: Vec<f64>,
}

/// A fully validated config with defaults filled in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub experiment: Experiment,
    pub seed: u64,
    pub domain: DomainSpec,
    pub kappa: f64,
    pub alpha: f64,
    pub lambda: f64,
    pub forcing: ForcingSpec,
    pub dt: Option<f64>,
    pub t_end: f64,
    pub sample_every: usize,
    pub scheme: Scheme,
    pub cfl_abort: bool,
    pub initial: InitialCondition,
    pub monitors: MonitorSpec,
    pub alphas: Vec<f64>,
    pub operator: OperatorSpec,
    pub estimates: EstimatesSpec,
    pub output: Option<PathBuf>,
    /// directory against which relative paths in the file are resolved
    #[serde(skip)]
    pub base_dir: PathBuf,
}

/// Read and validate a config file.
pub fn parse_config(path: impl AsRef<Path>) -> Result<RunConfig> {
    let path = path.as_ref();
    let src = std::fs::read_to_string(path).map_err(|e| {
        Error::Config(vec![ConfigError {
            line: 0,
            message: format!("cannot read {}: {e}", path.display()),
        }])
    })?;
    let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
    parse_config_str(&src, &base)
}

/// Validate config text; every problem found is reported, not just the first.
pub fn parse_config_str(src: &str, base_dir: &Path) -> Result<RunConfig> {
    let doc = DeTable::parse(src).map_err(|e| {
        Error::Config(vec![ConfigError {
            line: e.span().map_or(0, |s| line_of(src, s.start)),
            message: e.message().to_string(),
        }])
    })?;
    let mut r = Reader {
        src,
        errors: Vec::new(),
    };
    let cfg = r.build(doc.get_ref(), base_dir);
    match cfg {
        Some(cfg) if r.errors.is_empty() => Ok(cfg),
        _ => {
            let mut errors = r.errors;
            errors.sort_by_key(|e| e.line);
            Err(Error::Config(errors))
        }
    }
}

fn line_of(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

type Value<'a> = Spanned<DeValue<'a>>;

/// A section: its entries plus the line of its header.
struct Section<'t, 'a> {
    entries: Vec<(&'t str, &'t Value<'a>)>,
    line: usize,
}

impl<'t, 'a> Section<'t, 'a> {
    fn get(&self, key: &str) -> Option<&'t Value<'a>> {
        self.entries.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
    }
}

struct Reader<'s> {
    src: &'s str,
    errors: Vec<ConfigError>,
}

const TOP_KEYS: &[&str] = &[
    "experiment",
    "seed",
    "domain",
    "params",
    "forcing",
    "stepper",
    "initial",
    "monitors",
    "sweep",
    "operator",
    "estimates",
    "output",
];

impl<'s> Reader<'s> {
    fn line(&self, v: &Value<'_>) -> usize {
        line_of(self.src, v.span().start)
    }

    fn err(&mut self, line: usize, message: impl Into<String>) {
        self.errors.push(ConfigError {
            line,
            message: message.into(),
        });
    }

    fn section<'t, 'a>(
        &mut self,
        doc: &'t DeTable<'a>,
        name: &str,
        allowed: &[&str],
    ) -> Section<'t, 'a> {
        let Some((key, value)) = doc.iter().find(|(k, _)| k.get_ref().as_ref() == name) else {
            return Section {
                entries: Vec::new(),
                line: 1,
            };
        };
        let line = line_of(self.src, key.span().start);
        let DeValue::Table(t) = value.get_ref() else {
            self.err(line, format!("`{name}` must be a section"));
            return Section {
                entries: Vec::new(),
                line,
            };
        };
        let mut entries = Vec::new();
        for (k, v) in t.iter() {
            let key: &str = k.get_ref().as_ref();
            if allowed.contains(&key) {
                entries.push((key, v));
            } else {
                self.err(
                    line_of(self.src, k.span().start),
                    format!("unknown key `{name}.{key}`"),
                );
            }
        }
        Section { entries, line }
    }

    fn number(&mut self, v: &Value<'_>, what: &str) -> Option<f64> {
        let parsed = match v.get_ref() {
            DeValue::Float(f) => f.as_str().replace('_', "").parse::<f64>().ok(),
            DeValue::Integer(i) => {
                i64::from_str_radix(&i.as_str().replace('_', ""), i.radix()).ok().map(|x| x as f64)
            }
            DeValue::String(s) if s.as_ref() == "inf" => Some(f64::INFINITY),
            _ => None,
        };
        if parsed.is_none() {
            let line = self.line(v);
            self.err(line, format!("`{what}` must be a number"));
        }
        parsed
    }

    fn integer(&mut self, v: &Value<'_>, what: &str) -> Option<i64> {
        let parsed = match v.get_ref() {
            DeValue::Integer(i) => i64::from_str_radix(&i.as_str().replace('_', ""), i.radix()).ok(),
            _ => None,
        };
        if parsed.is_none() {
            let line = self.line(v);
            self.err(line, format!("`{what}` must be an integer"));
        }
        parsed
    }

    fn string<'v>(&mut self, v: &'v Value<'_>, what: &str) -> Option<&'v str> {
        match v.get_ref() {
            DeValue::String(s) => Some(s.as_ref()),
            _ => {
                let line = self.line(v);
                self.err(line, format!("`{what}` must be a string"));
                None
            }
        }
    }

    fn boolean(&mut self, v: &Value<'_>, what: &str) -> Option<bool> {
        match v.get_ref() {
            DeValue::Boolean(b) => Some(*b),
            _ => {
                let line = self.line(v);
                self.err(line, format!("`{what}` must be true or false"));
                None
            }
        }
    }

    fn numbers(&mut self, v: &Value<'_>, what: &str) -> Option<Vec<f64>> {
        let DeValue::Array(items) = v.get_ref() else {
            let line = self.line(v);
            self.err(line, format!("`{what}` must be an array of numbers"));
            return None;
        };
        let out: Vec<Option<f64>> = items.iter().map(|x| self.number(x, what)).collect();
        out.into_iter().collect()
    }

    fn check(&mut self, v: Option<&Value<'_>>, line: usize, ok: bool, message: impl Into<String>) {
        if !ok {
            let line = v.map_or(line, |v| self.line(v));
            self.err(line, message);
        }
    }

    fn build(&mut self, doc: &DeTable<'_>, base_dir: &Path) -> Option<RunConfig> {
        for (k, _) in doc.iter() {
            let key: &str = k.get_ref().as_ref();
            if !TOP_KEYS.contains(&key) {
                let line = line_of(self.src, k.span().start);
                self.err(line, format!("unknown key `{key}`"));
            }
        }
        let top = |name: &str| doc.iter().find(|(k, _)| k.get_ref().as_ref() == name).map(|(_, v)| v);

        let experiment = match top("experiment") {
            None => {
                self.err(1, "missing required field `experiment`");
                None
            }
            Some(v) => self.string(v, "experiment").and_then(|s| {
                let e = Experiment::parse(s);
                if e.is_none() {
                    let line = self.line(v);
                    self.err(
                        line,
                        format!(
                            "unknown experiment `{s}` (expected simulate, sweep-alpha, \
                             operator-tests, estimates-report or dirichlet-sweep)"
                        ),
                    );
                }
                e
            }),
        };
        let seed = match top("seed") {
            None => Some(0),
            Some(v) => self.integer(v, "seed").and_then(|s| {
                let ok = s >= 0;
                self.check(Some(v), 1, ok, "`seed` must be non-negative");
                ok.then_some(s as u64)
            }),
        };
        let evolves = experiment.is_some_and(|e| e.evolves());
        let sweeps = experiment.is_some_and(|e| e.sweeps());

        // [domain]
        let dom = self.section(doc, "domain", &["n", "box", "basis"]);
        let n = match dom.get("n") {
            None => {
                self.err(dom.line, "missing required field `domain.n`");
                None
            }
            Some(v) => self.integer(v, "domain.n").and_then(|n| {
                let ok = n >= 16 && (n as u64).is_power_of_two();
                self.check(Some(v), dom.line, ok, format!("`domain.n` must be a power of two >= 16, got {n}"));
                ok.then_some(n as usize)
            }),
        };
        let default_basis = if experiment == Some(Experiment::DirichletSweep) {
            Basis::DirichletRectangle
        } else {
            Basis::PeriodicTorus
        };
        let basis = match dom.get("basis") {
            None => Some(default_basis),
            Some(v) => self.string(v, "domain.basis").and_then(|s| {
                let b = match s {
                    "torus" => Some(Basis::PeriodicTorus),
                    "dirichlet" => Some(Basis::DirichletRectangle),
                    _ => None,
                };
                self.check(Some(v), dom.line, b.is_some(), format!("unknown basis `{s}` (torus | dirichlet)"));
                b
            }),
        };
        if let (Some(e), Some(b)) = (experiment, basis) {
            let need = match e {
                Experiment::DirichletSweep => Some(Basis::DirichletRectangle),
                Experiment::SweepAlpha => Some(Basis::PeriodicTorus),
                _ => None,
            };
            if need.is_some_and(|need| need != b) {
                let line = dom.get("basis").map_or(dom.line, |v| self.line(v));
                self.err(line, format!("experiment `{}` does not support this basis", e.name()));
            }
        }
        let box_len = match dom.get("box") {
            None => basis.map(|b| match b {
                Basis::PeriodicTorus => 2.0 * PI,
                Basis::DirichletRectangle => PI,
            }),
            Some(v) => self.number(v, "domain.box").and_then(|l| {
                let ok = l > 0.0 && l.is_finite();
                self.check(Some(v), dom.line, ok, format!("`domain.box` must be positive, got {l}"));
                ok.then_some(l)
            }),
        };

        // [params]
        let par = self.section(doc, "params", &["kappa", "alpha", "lambda"]);
        let kappa = match par.get("kappa") {
            None if evolves => {
                self.err(par.line, "missing required field `params.kappa`");
                None
            }
            None => Some(1.0),
            Some(v) => self.number(v, "params.kappa").and_then(|k| {
                let ok = k > 0.0 && k.is_finite();
                self.check(Some(v), par.line, ok, format!("`params.kappa` must be positive, got {k}"));
                ok.then_some(k)
            }),
        };
        let needs_alpha = experiment == Some(Experiment::Simulate);
        let alpha = match par.get("alpha") {
            None if needs_alpha => {
                self.err(par.line, "missing required field `params.alpha`");
                None
            }
            None => Some(0.75),
            Some(v) => self.number(v, "params.alpha").and_then(|a| {
                let ok = a > 0.5 && a <= 1.0;
                self.check(
                    Some(v),
                    par.line,
                    ok,
                    format!("alpha must exceed 1/2 for time evolution (alpha in (1/2, 1]), got {a}"),
                );
                ok.then_some(a)
            }),
        };
        let lambda = match par.get("lambda") {
            None => Some(0.0),
            Some(v) => self.number(v, "params.lambda").and_then(|l| {
                let ok = l >= 0.0 && l.is_finite();
                self.check(Some(v), par.line, ok, format!("`params.lambda` must be non-negative, got {l}"));
                ok.then_some(l)
            }),
        };

        // [forcing]
        let frc = self.section(doc, "forcing", &["kind", "k", "amplitude"]);
        let forcing = match frc.get("kind") {
            None => {
                if let Some(v) = frc.get("k").or(frc.get("amplitude")) {
                    let line = self.line(v);
                    self.err(line, "`forcing.kind` is required when forcing keys are given");
                    None
                } else {
                    Some(ForcingSpec::None)
                }
            }
            Some(v) => match self.string(v, "forcing.kind") {
                Some("none") => Some(ForcingSpec::None),
                Some("stationary") => Some(ForcingSpec::Stationary),
                Some("mode") => {
                    let k = match frc.get("k") {
                        None => {
                            self.err(frc.line, "missing required field `forcing.k`");
                            None
                        }
                        Some(kv) => self.numbers(kv, "forcing.k").and_then(|k| {
                            let ok = k.len() == 2
                                && k.iter().all(|x| x.fract() == 0.0)
                                && k.iter().any(|x| *x != 0.0);
                            self.check(Some(kv), frc.line, ok, "`forcing.k` must be two integers, not both zero");
                            ok.then(|| (k[0] as i64, k[1] as i64))
                        }),
                    };
                    let amplitude = match frc.get("amplitude") {
                        None => Some(0.1),
                        Some(av) => self.number(av, "forcing.amplitude").and_then(|a| {
                            let ok = a >= 0.0 && a.is_finite();
                            self.check(Some(av), frc.line, ok, "`forcing.amplitude` must be non-negative");
                            ok.then_some(a)
                        }),
                    };
                    k.zip(amplitude).map(|(k, amplitude)| ForcingSpec::Mode { k, amplitude })
                }
                Some(other) => {
                    let line = self.line(v);
                    self.err(line, format!("unknown forcing kind `{other}` (none | mode | stationary)"));
                    None
                }
                None => None,
            },
        };

        // [stepper]
        let stp = self.section(doc, "stepper", &["t_end", "dt", "sample_every", "scheme", "cfl_abort"]);
        let t_end = match stp.get("t_end") {
            None if evolves => {
                self.err(stp.line, "missing required field `stepper.t_end`");
                None
            }
            None => Some(0.0),
            Some(v) => self.number(v, "stepper.t_end").and_then(|t| {
                let ok = t > 0.0 && t.is_finite();
                self.check(Some(v), stp.line, ok, format!("`stepper.t_end` must be positive, got {t}"));
                ok.then_some(t)
            }),
        };
        let dt = match stp.get("dt") {
            None => Some(None),
            Some(v) => self.number(v, "stepper.dt").and_then(|d| {
                let mut ok = d > 0.0 && d.is_finite();
                self.check(Some(v), stp.line, ok, format!("`stepper.dt` must be positive, got {d}"));
                if ok {
                    if let Some(t) = t_end.filter(|t| *t > 0.0) {
                        ok = d <= t;
                        self.check(Some(v), stp.line, ok, format!("`stepper.dt` = {d} exceeds t_end = {t}"));
                    }
                }
                ok.then_some(Some(d))
            }),
        };
        let sample_every = match stp.get("sample_every") {
            None => Some(1),
            Some(v) => self.integer(v, "stepper.sample_every").and_then(|s| {
                let ok = s >= 1;
                self.check(Some(v), stp.line, ok, "`stepper.sample_every` must be at least 1");
                ok.then_some(s as usize)
            }),
        };
        let scheme = match stp.get("scheme") {
            None => Some(Scheme::Etd2Rk),
            Some(v) => self.string(v, "stepper.scheme").and_then(|s| {
                let out = match s {
                    "etd2rk" => Some(Scheme::Etd2Rk),
                    "etd1" => Some(Scheme::Etd1),
                    _ => None,
                };
                self.check(Some(v), stp.line, out.is_some(), format!("unknown scheme `{s}` (etd2rk | etd1)"));
                out
            }),
        };
        let cfl_abort = match stp.get("cfl_abort") {
            None => Some(false),
            Some(v) => self.boolean(v, "stepper.cfl_abort"),
        };

        // [initial]
        let ini = self.section(doc, "initial", &["kind", "amplitude", "decay", "center", "width", "path"]);
        let default_amp = if sweeps { 0.05 } else { 1.0 };
        let amplitude = match ini.get("amplitude") {
            None => Some(default_amp),
            Some(v) => self.number(v, "initial.amplitude").and_then(|a| {
                let ok = a >= 0.0 && a.is_finite();
                self.check(Some(v), ini.line, ok, "`initial.amplitude` must be non-negative");
                ok.then_some(a)
            }),
        };
        let kind = match ini.get("kind") {
            None => Some("random-smooth"),
            Some(v) => self.string(v, "initial.kind"),
        };
        let initial = match kind {
            Some("random-smooth") => {
                let decay = match ini.get("decay") {
                    None => Some(3.0),
                    Some(v) => self.number(v, "initial.decay").and_then(|d| {
                        let ok = d >= 0.0 && d.is_finite();
                        self.check(Some(v), ini.line, ok, "`initial.decay` must be non-negative");
                        ok.then_some(d)
                    }),
                };
                amplitude
                    .zip(decay)
                    .map(|(amplitude, decay)| InitialCondition::RandomSmooth { amplitude, decay })
            }
            Some("shear") => amplitude.map(|amplitude| InitialCondition::Shear { amplitude }),
            Some("gaussian-bump") => {
                let width = match ini.get("width") {
                    None => Some(0.5),
                    Some(v) => self.number(v, "initial.width").and_then(|w| {
                        let ok = w > 0.0 && w.is_finite();
                        self.check(Some(v), ini.line, ok, "`initial.width` must be positive");
                        ok.then_some(w)
                    }),
                };
                let center = match ini.get("center") {
                    None => Some(None),
                    Some(v) => self.numbers(v, "initial.center").and_then(|c| {
                        let ok = c.len() == 2;
                        self.check(Some(v), ini.line, ok, "`initial.center` must have two entries");
                        ok.then_some(Some((c[0], c[1])))
                    }),
                };
                match (width, center, amplitude) {
                    (Some(width), Some(center), Some(amplitude)) => Some(InitialCondition::GaussianBump {
                        center,
                        width,
                        amplitude,
                    }),
                    _ => None,
                }
            }
            Some("file") => match ini.get("path") {
                None => {
                    self.err(ini.line, "missing required field `initial.path`");
                    None
                }
                Some(v) => self
                    .string(v, "initial.path")
                    .map(|p| InitialCondition::File { path: base_dir.join(p) }),
            },
            Some(other) => {
                let line = ini.get("kind").map_or(ini.line, |v| self.line(v));
                self.err(
                    line,
                    format!("unknown initial kind `{other}` (random-smooth | shear | gaussian-bump | file)"),
                );
                None
            }
            None => None,
        };

        // [monitors]
        let mon = self.section(doc, "monitors", &["q", "sobolev", "tail"]);
        let q = match mon.get("q") {
            None => Some(vec![2.0, 4.0]),
            Some(v) => self.numbers(v, "monitors.q").and_then(|q| {
                let ok = q.iter().all(|x| *x >= 2.0);
                self.check(Some(v), mon.line, ok, "`monitors.q` entries must be >= 2");
                ok.then_some(q)
            }),
        };
        let sobolev = match mon.get("sobolev") {
            None => Some(Vec::new()),
            Some(v) => self.numbers(v, "monitors.sobolev").and_then(|s| {
                let ok = s.iter().all(|x| x.is_finite());
                self.check(Some(v), mon.line, ok, "`monitors.sobolev` entries must be finite");
                ok.then_some(s)
            }),
        };
        let tail = match mon.get("tail") {
            None => Some(Vec::new()),
            Some(v) => self.numbers(v, "monitors.tail").and_then(|t| {
                let limit = box_len.unwrap_or(f64::INFINITY) / 4.0;
                let ok = t.iter().all(|k| *k > 0.0 && *k <= limit);
                self.check(Some(v), mon.line, ok, format!("`monitors.tail` radii must lie in (0, L/4 = {limit}]"));
                ok.then_some(t)
            }),
        };

        // [sweep]
        let swp = self.section(doc, "sweep", &["alphas"]);
        let alphas = match swp.get("alphas") {
            None => Some(DEFAULT_ALPHAS.to_vec()),
            Some(v) => self.numbers(v, "sweep.alphas").and_then(|a| {
                let ok = !a.is_empty()
                    && a.windows(2).all(|w| w[0] > w[1])
                    && a[0] <= 1.0
                    && *a.last().expect("non-empty") >= 0.505;
                self.check(
                    Some(v),
                    swp.line,
                    ok,
                    "`sweep.alphas` must be strictly decreasing within [0.505, 1]",
                );
                ok.then_some(a)
            }),
        };

        // [operator]
        let op = self.section(doc, "operator", &["laplacian_n", "spd_n", "cond", "trials"]);
        let size = |r: &mut Self, key: &str, default: usize, min: i64| match op.get(key) {
            None => Some(default),
            Some(v) => r.integer(v, &format!("operator.{key}")).and_then(|x| {
                let ok = x >= min;
                r.check(Some(v), op.line, ok, format!("`operator.{key}` must be at least {min}"));
                ok.then_some(x as usize)
            }),
        };
        let laplacian_n = size(self, "laplacian_n", 32, 2);
        let spd_n = size(self, "spd_n", 16, 1);
        let trials = size(self, "trials", 1000, 1);
        let cond = match op.get("cond") {
            None => Some(1e3),
            Some(v) => self.number(v, "operator.cond").and_then(|c| {
                let ok = (1.0..=1e4).contains(&c);
                self.check(Some(v), op.line, ok, "`operator.cond` must lie in [1, 1e4]");
                ok.then_some(c)
            }),
        };

        // [estimates]
        let est = self.section(doc, "estimates", &["fields", "alphas", "q"]);
        let fields = match est.get("fields") {
            None => Some(50),
            Some(v) => self.integer(v, "estimates.fields").and_then(|f| {
                let ok = f >= 1;
                self.check(Some(v), est.line, ok, "`estimates.fields` must be at least 1");
                ok.then_some(f as usize)
            }),
        };
        let est_alphas = match est.get("alphas") {
            None => Some(vec![0.5, 0.6, 0.7, 0.8, 0.9, 1.0]),
            Some(v) => self.numbers(v, "estimates.alphas").and_then(|a| {
                let ok = a.iter().all(|x| (0.0..=1.0).contains(x));
                self.check(Some(v), est.line, ok, "`estimates.alphas` entries must lie in [0, 1]");
                ok.then_some(a)
            }),
        };
        let est_q = match est.get("q") {
            None => Some(vec![2.0, 3.0, 4.0, 8.0]),
            Some(v) => self.numbers(v, "estimates.q").and_then(|q| {
                let ok = q.iter().all(|x| *x >= 2.0 && x.is_finite());
                self.check(Some(v), est.line, ok, "`estimates.q` entries must be finite and >= 2");
                ok.then_some(q)
            }),
        };

        // [output]
        let out = self.section(doc, "output", &["dir"]);
        let output = match out.get("dir") {
            None => Some(None),
            Some(v) => self.string(v, "output.dir").map(|d| Some(PathBuf::from(d))),
        };

        let domain = match (n, box_len, basis) {
            (Some(n), Some(l), Some(b)) => match DomainSpec::new(n, l, b) {
                Ok(d) => Some(d),
                Err(e) => {
                    self.err(dom.line, e.to_string());
                    None
                }
            },
            _ => None,
        };

        Some(RunConfig {
            experiment: experiment?,
            seed: seed?,
            domain: domain?,
            kappa: kappa?,
            alpha: alpha?,
            lambda: lambda?,
            forcing: forcing?,
            dt: dt?,
            t_end: t_end?,
            sample_every: sample_every?,
            scheme: scheme?,
            cfl_abort: cfl_abort?,
            initial: initial?,
            monitors: MonitorSpec {
                q: q?,
                sobolev: sobolev?,
                tail: tail?,
            },
            alphas: alphas?,
            operator: OperatorSpec {
                laplacian_n: laplacian_n?,
                spd_n: spd_n?,
                cond: cond?,
                trials: trials?,
            },
            estimates: EstimatesSpec {
                fields: fields?,
                alphas: est_alphas?,
                q: est_q?,
            },
            output: output?,
            base_dir: base_dir.to_path_buf(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(src: &str) -> Result<RunConfig> {
        parse_config_str(src, Path::new("."))
    }

    fn errors(src: &str) -> Vec<ConfigError> {
        match parse(src) {
            Err(Error::Config(e)) => e,
            other => panic!("expected config errors, got {other:?}"),
        }
    }

    const MINIMAL: &str = "experiment = \"simulate\"\n[domain]\nn = 64\n[params]\nalpha = 0.75\nkappa = 0.01\n[stepper]\nt_end = 1\n";

    #[test]
    fn minimal_config_gets_defaults() {
        let c = parse(MINIMAL).unwrap();
        assert_eq!(c.experiment, Experiment::Simulate);
        assert_eq!(c.domain.n(), 64);
        assert_eq!(c.domain.box_len(), 2.0 * PI);
        assert_eq!(c.domain.basis(), Basis::PeriodicTorus);
        assert_eq!((c.kappa, c.alpha, c.lambda, c.t_end), (0.01, 0.75, 0.0, 1.0));
        assert_eq!(c.dt, None);
        assert_eq!(c.sample_every, 1);
        assert_eq!(c.scheme, Scheme::Etd2Rk);
        assert_eq!(c.seed, 0);
        assert_eq!(c.forcing, ForcingSpec::None);
        assert_eq!(c.initial, InitialCondition::RandomSmooth { amplitude: 1.0, decay: 3.0 });
        assert_eq!(c.monitors.q, vec![2.0, 4.0]);
    }

    #[test]
    fn critical_alpha_rejected_with_line() {
        let e = errors(&MINIMAL.replace("alpha = 0.75", "alpha = 0.5"));
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].line, 5);
        assert!(e[0].message.contains("alpha must exceed 1/2 for time evolution"));
    }

    #[test]
    fn non_power_of_two_rejected() {
        let e = errors(&MINIMAL.replace("n = 64", "n = 100"));
        assert_eq!(e[0].line, 3);
        assert!(e[0].message.contains("power of two"));
    }

    #[test]
    fn all_errors_are_collected() {
        let src = "experiment = \"simulate\"\ncolour = 3\n[domain]\nn = 100\nbogus = 1\n[params]\nalpha = 2\n[stepper]\nt_end = -1\n";
        let e = errors(src);
        let lines: Vec<usize> = e.iter().map(|e| e.line).collect();
        // unknown key, bad n, unknown key, missing kappa, bad alpha, bad t_end
        assert_eq!(lines, vec![2, 4, 5, 6, 7, 9], "{e:?}");
        assert!(e.iter().any(|e| e.message.contains("missing required field `params.kappa`")));
    }

    #[test]
    fn syntax_error_reports_line() {
        let e = errors("experiment = \"simulate\"\n[domain\nn = 64\n");
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].line, 2);
    }

    #[test]
    fn wrong_type_is_an_error() {
        let e = errors(&MINIMAL.replace("kappa = 0.01", "kappa = \"small\""));
        assert!(e[0].message.contains("must be a number"));
    }

    #[test]
    fn sweep_defaults() {
        let c = parse("experiment = \"sweep-alpha\"\n[domain]\nn = 32\n[params]\nkappa = 0.2\n[stepper]\nt_end = 2\n").unwrap();
        assert_eq!(c.alphas, DEFAULT_ALPHAS.to_vec());
        assert_eq!(c.initial, InitialCondition::RandomSmooth { amplitude: 0.05, decay: 3.0 });
        let d = parse("experiment = \"dirichlet-sweep\"\n[domain]\nn = 32\n[params]\nkappa = 0.2\n[stepper]\nt_end = 2\n").unwrap();
        assert_eq!(d.domain.basis(), Basis::DirichletRectangle);
        assert_eq!(d.domain.box_len(), PI);
    }

    #[test]
    fn bad_alpha_list() {
        let e = errors("experiment = \"sweep-alpha\"\n[domain]\nn = 32\n[params]\nkappa = 0.2\n[stepper]\nt_end = 2\n[sweep]\nalphas = [0.6, 0.7]\n");
        assert_eq!(e[0].line, 9);
    }

    #[test]
    fn operator_experiment_needs_no_dynamics() {
        let c = parse("experiment = \"operator-tests\"\n[domain]\nn = 16\n").unwrap();
        assert_eq!(c.operator.laplacian_n, 32);
        assert_eq!(c.operator.trials, 1000);
    }
}
