//! Run configuration: `key = value` lines, `#` starts a comment.
//!
//! Every key has a default; a file only lists what it changes. Lists of
//! windows or cones are separated by `;`, lists of numbers by `,`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use toric_boundary::lattice::{ConeRegion, Window};
use toric_boundary::pauli::Sign;
use toric_boundary::sampling::DEFAULT_SEED;
use toric_boundary::{BoundaryLabel, BulkLabel, HalfBraidingObject};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Ground,
    Oracles,
    Nontraciality,
    Condensation,
    Intertwiners,
    Braiding,
    Haag,
    Split,
    Fusion,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Ground,
        Suite::Oracles,
        Suite::Nontraciality,
        Suite::Condensation,
        Suite::Intertwiners,
        Suite::Braiding,
        Suite::Haag,
        Suite::Split,
        Suite::Fusion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ground => "ground",
            Suite::Oracles => "oracles",
            Suite::Nontraciality => "nontraciality",
            Suite::Condensation => "condensation",
            Suite::Intertwiners => "intertwiners",
            Suite::Braiding => "braiding",
            Suite::Haag => "haag",
            Suite::Split => "split",
            Suite::Fusion => "fusion",
        }
    }
}

impl FromStr for Suite {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Suite, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| ConfigError(format!("unknown suite `{}`", s.trim())))
    }
}

/// Parses a comma-separated suite list.
pub fn parse_suites(text: &str) -> Result<Vec<Suite>, ConfigError> {
    let mut out: Vec<Suite> = text.split(',').filter(|s| !s.trim().is_empty()).map(str::parse).collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    pub suites: Vec<Suite>,
    pub ground_window: Window,
    pub ground_samples: usize,
    pub oracle_samples: usize,
    pub oracle_max_support: usize,
    pub dense_window: Window,
    pub nontraciality_window: Window,
    pub condensation_windows: Vec<Window>,
    pub condensation_samples: usize,
    pub intertwiner_n: Vec<usize>,
    pub braiding_n: Vec<usize>,
    pub haag_cones: Vec<ConeRegion>,
    pub haag_window: Window,
    pub haag_samples: usize,
    pub rvd_max_bonds: usize,
    pub rvd_rows: Vec<i32>,
    pub split_inner: ConeRegion,
    pub split_outer: ConeRegion,
    pub split_window: Window,
    pub split_pairs: usize,
    pub index_windows: Vec<Window>,
    pub index_n: Vec<usize>,
    pub fusion_window: Window,
    pub diagram_window: Window,
    /// Replacement functor images, e.g. `m=1,+1`.
    pub functor_overrides: Vec<(BulkLabel, HalfBraidingObject)>,
    pub timings: bool,
    pub out: Option<PathBuf>,
}

fn win(c: i32, a: i32, b: i32) -> Window {
    Window::new(c, a, b).expect("valid default window")
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: DEFAULT_SEED,
            suites: Suite::ALL.to_vec(),
            ground_window: win(11, 0, 11),
            ground_samples: 100,
            oracle_samples: 10_000,
            oracle_max_support: 20,
            dense_window: win(0, 0, 2),
            nontraciality_window: win(2, 0, 2),
            condensation_windows: vec![win(1, 0, 1), win(15, 0, 15)],
            condensation_samples: 10_000,
            intertwiner_n: vec![10, 20, 30],
            braiding_n: vec![8, 16, 24],
            haag_cones: vec![ConeRegion::up(0, 1, 1), ConeRegion::down(1, 1, 2)],
            haag_window: win(3, -1, 4),
            haag_samples: 1000,
            rvd_max_bonds: 8,
            rvd_rows: vec![-1, 0, 1],
            split_inner: ConeRegion::up(4, 1, 1),
            split_outer: ConeRegion::up(0, 1, 2),
            split_window: win(6, -3, 10),
            split_pairs: 1000,
            index_windows: vec![win(6, -4, 10), win(10, -6, 14)],
            index_n: vec![24, 40],
            fusion_window: win(8, -2, 10),
            diagram_window: win(8, -4, 10),
            functor_overrides: Vec::new(),
            timings: false,
            out: None,
        }
    }
}

fn err<E: fmt::Display>(key: &str) -> impl Fn(E) -> ConfigError + '_ {
    move |e| ConfigError(format!("{key}: {e}"))
}

fn list<T, E: fmt::Display>(key: &str, text: &str, sep: char, f: impl Fn(&str) -> Result<T, E>) -> Result<Vec<T>, ConfigError> {
    text.split(sep).map(str::trim).filter(|s| !s.is_empty()).map(|s| f(s).map_err(err(key))).collect()
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn parse_bulk(s: &str) -> Result<BulkLabel, String> {
    BulkLabel::ALL
        .into_iter()
        .find(|l| l.to_string() == s.trim())
        .ok_or_else(|| format!("unknown bulk label `{s}`"))
}

fn parse_override(s: &str) -> Result<(BulkLabel, HalfBraidingObject), String> {
    let (label, image) = s.split_once('=').ok_or("expected `label=base,sign`")?;
    let (base, sign) = image.split_once(',').ok_or("expected `base,sign`")?;
    let base = BoundaryLabel::ALL
        .into_iter()
        .find(|l| l.to_string() == base.trim())
        .ok_or_else(|| format!("unknown boundary label `{base}`"))?;
    let scalar = match sign.trim() {
        "+1" => Sign::Plus,
        "-1" => Sign::Minus,
        other => return Err(format!("sign must be +1 or -1, got `{other}`")),
    };
    Ok((parse_bulk(label)?, HalfBraidingObject { base, scalar }))
}

impl RunConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let v = value.trim();
        let window = |s: &str| Window::parse(s).map_err(err(key));
        let cone = |s: &str| ConeRegion::parse(s).map_err(err(key));
        let count = |s: &str| s.parse::<usize>().map_err(err(key));
        match key {
            "seed" => self.seed = v.parse().map_err(err(key))?,
            "suites" => self.suites = parse_suites(v)?,
            "ground_window" => self.ground_window = window(v)?,
            "ground_samples" => self.ground_samples = count(v)?,
            "oracle_samples" => self.oracle_samples = count(v)?,
            "oracle_max_support" => self.oracle_max_support = count(v)?,
            "dense_window" => self.dense_window = window(v)?,
            "nontraciality_window" => self.nontraciality_window = window(v)?,
            "condensation_windows" => self.condensation_windows = list(key, v, ';', Window::parse)?,
            "condensation_samples" => self.condensation_samples = count(v)?,
            "intertwiner_n" => self.intertwiner_n = list(key, v, ',', str::parse)?,
            "braiding_n" => self.braiding_n = list(key, v, ',', str::parse)?,
            "haag_cones" => self.haag_cones = list(key, v, ';', ConeRegion::parse)?,
            "haag_window" => self.haag_window = window(v)?,
            "haag_samples" => self.haag_samples = count(v)?,
            "rvd_max_bonds" => self.rvd_max_bonds = count(v)?,
            "rvd_rows" => self.rvd_rows = list(key, v, ',', str::parse)?,
            "split_inner" => self.split_inner = cone(v)?,
            "split_outer" => self.split_outer = cone(v)?,
            "split_window" => self.split_window = window(v)?,
            "split_pairs" => self.split_pairs = count(v)?,
            "index_windows" => self.index_windows = list(key, v, ';', Window::parse)?,
            "index_n" => self.index_n = list(key, v, ',', str::parse)?,
            "fusion_window" => self.fusion_window = window(v)?,
            "diagram_window" => self.diagram_window = window(v)?,
            "functor_overrides" => self.functor_overrides = list(key, v, ';', parse_override)?,
            "timings" => self.timings = v.parse().map_err(err(key))?,
            "out" => self.out = (!v.is_empty()).then(|| PathBuf::from(v)),
            _ => return Err(ConfigError(format!("unknown key `{key}`"))),
        }
        Ok(())
    }

    /// Cross-key checks, run after a whole file is applied.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.index_windows.len() != self.index_n.len() {
            return Err(ConfigError(format!(
                "index_windows has {} entries but index_n has {}",
                self.index_windows.len(),
                self.index_n.len()
            )));
        }
        if self.haag_cones.is_empty() {
            return Err(ConfigError("haag_cones is empty".into()));
        }
        Ok(())
    }

    /// Applies a config file on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError(format!("line {}: expected `key = value`", n + 1)))?;
            self.set(k.trim(), v).map_err(|e| ConfigError(format!("line {}: {e}", n + 1)))?;
        }
        self.validate()
    }

    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let mut c = RunConfig::default();
        c.apply_text(text)?;
        Ok(c)
    }

    /// Every key with its current value, in a fixed order.
    pub fn pairs(&self) -> Vec<(&'static str, String)> {
        let overrides: Vec<String> = self.functor_overrides.iter().map(|(l, o)| format!("{l}={},{}", o.base, o.scalar)).collect();
        vec![
            ("seed", self.seed.to_string()),
            ("suites", self.suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")),
            ("ground_window", self.ground_window.to_string()),
            ("ground_samples", self.ground_samples.to_string()),
            ("oracle_samples", self.oracle_samples.to_string()),
            ("oracle_max_support", self.oracle_max_support.to_string()),
            ("dense_window", self.dense_window.to_string()),
            ("nontraciality_window", self.nontraciality_window.to_string()),
            ("condensation_windows", join(&self.condensation_windows, "; ")),
            ("condensation_samples", self.condensation_samples.to_string()),
            ("intertwiner_n", join(&self.intertwiner_n, ",")),
            ("braiding_n", join(&self.braiding_n, ",")),
            ("haag_cones", join(&self.haag_cones, "; ")),
            ("haag_window", self.haag_window.to_string()),
            ("haag_samples", self.haag_samples.to_string()),
            ("rvd_max_bonds", self.rvd_max_bonds.to_string()),
            ("rvd_rows", join(&self.rvd_rows, ",")),
            ("split_inner", self.split_inner.to_string()),
            ("split_outer", self.split_outer.to_string()),
            ("split_window", self.split_window.to_string()),
            ("split_pairs", self.split_pairs.to_string()),
            ("index_windows", join(&self.index_windows, "; ")),
            ("index_n", join(&self.index_n, ",")),
            ("fusion_window", self.fusion_window.to_string()),
            ("diagram_window", self.diagram_window.to_string()),
            ("functor_overrides", overrides.join("; ")),
            ("timings", self.timings.to_string()),
            ("out", self.out.as_ref().map(|p| p.display().to_string()).unwrap_or_default()),
        ]
    }

    pub fn to_text(&self) -> String {
        self.pairs().into_iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip() {
        let c = RunConfig::default();
        assert_eq!(RunConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn edited_config_round_trips() {
        let text = "# small run\nseed = 7\nsuites = fusion, ground\nintertwiner_n = 12\nfunctor_overrides = m=1,+1; e=eps,-1  # sabotage\nout = r.json\n";
        let c = RunConfig::parse(text).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.suites, vec![Suite::Ground, Suite::Fusion]);
        assert_eq!(c.functor_overrides.len(), 2);
        assert_eq!(RunConfig::parse(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn bad_lines() {
        assert!(RunConfig::parse("suites = ground,bogus").is_err());
        assert!(RunConfig::parse("nonsense").is_err());
        assert!(RunConfig::parse("colour = red").is_err());
        assert!(RunConfig::parse("ground_window = window(cols=-1, rows=0..1)").is_err());
        assert!(RunConfig::parse("index_n = 1").is_err());
        let e = RunConfig::parse("seed = 1\nseed = x").unwrap_err();
        assert!(e.0.starts_with("line 2"), "{e}");
    }
}
