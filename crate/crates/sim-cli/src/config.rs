//! Experiment configuration.
//!
//! Configs are line-oriented `key = value` text with `#` comments. Values
//! arrive in layers — built-in defaults, a named preset, a config file, the
//! subcommand, and trailing `--key value` overrides — and later layers win.
//! Every error carries the source (line number, override position, preset
//! name) of the entry that caused it.

use std::fmt;

use floquet_lattice::floquet::SweepAxis;
use floquet_lattice::lattice::{LatticeParams, Spin, SpinorWavefunction};
use floquet_lattice::propagator::IntegratorConfig;
use ndarray::Array1;
use num_complex::Complex64 as C64;

/// Where a configuration entry came from; shown in every parse error and
/// used to rank layers (later layers override earlier ones).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    /// Built-in default value.
    Default,
    /// A named preset (`sim figure <name>`).
    Preset(&'static str),
    /// 1-based line of a config file.
    Line(usize),
    /// The subcommand itself (it pins the run mode).
    Subcommand,
    /// 1-based position of a trailing `--key value` override pair.
    Override(usize),
}

impl Source {
    /// Layer rank; higher ranks override lower ones.
    fn layer(self) -> u8 {
        match self {
            Source::Default => 0,
            Source::Preset(_) => 1,
            Source::Line(_) => 2,
            Source::Subcommand => 3,
            Source::Override(_) => 4,
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Default => write!(f, "default"),
            Source::Preset(name) => write!(f, "preset {name}"),
            Source::Line(n) => write!(f, "line {n}"),
            Source::Subcommand => write!(f, "subcommand"),
            Source::Override(n) => write!(f, "override {n}"),
        }
    }
}

/// One raw `key = value` pair together with its origin.
#[derive(Debug, Clone)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub source: Source,
}

impl Entry {
    pub fn new(key: &str, value: &str, source: Source) -> Self {
        Entry {
            key: key.to_string(),
            value: value.to_string(),
            source,
        }
    }
}

/// A configuration error, pointing at the entry that caused it.
#[derive(Debug, Clone, thiserror::Error)]
#[error("{location}: {message}")]
pub struct ParseError {
    pub location: Source,
    pub message: String,
}

impl ParseError {
    fn at(location: Source, message: impl Into<String>) -> Self {
        ParseError {
            location,
            message: message.into(),
        }
    }
}

/// Which computation a run performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Evolve,
    Spectrum,
    Chi,
    Effective,
    Validity,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Evolve => "evolve",
            Mode::Spectrum => "spectrum",
            Mode::Chi => "chi",
            Mode::Effective => "effective",
            Mode::Validity => "validity",
        }
    }
}

/// A parameter that is either pinned in absolute units or tied to the drive
/// frequency as a ratio. Frequency sweeps rebuild the parameter set at each
/// grid point, so they need to know which form the user meant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scaled {
    Absolute(f64),
    RatioToOmega(f64),
}

impl Scaled {
    pub fn at(self, omega: f64) -> f64 {
        match self {
            Scaled::Absolute(x) => x,
            Scaled::RatioToOmega(r) => r * omega,
        }
    }

    pub fn is_ratio(self) -> bool {
        matches!(self, Scaled::RatioToOmega(_))
    }
}

/// How the energy-like parameters relate to the drive frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyScaling {
    pub zeeman: Scaled,
    pub epsilon0: Scaled,
    pub drive: Scaled,
}

impl FrequencyScaling {
    /// The full parameter set at drive frequency `omega`, keeping the
    /// structural fields of `base` and re-deriving the energies.
    pub fn params_at(&self, base: &LatticeParams, omega: f64) -> LatticeParams {
        LatticeParams {
            n_sites: base.n_sites,
            hopping: base.hopping,
            soc_angle: base.soc_angle,
            zeeman: self.zeeman.at(omega),
            impurity: self.epsilon0.at(omega),
            drive_amplitude: self.drive.at(omega),
            drive_frequency: omega,
        }
    }
}

/// The initial wavefunction: a single basis state or an explicit amplitude
/// vector (given in state-index order, normalized on input).
#[derive(Debug, Clone, PartialEq)]
pub enum InitialState {
    Basis { site: i32, spin: Spin },
    Amplitudes(Vec<C64>),
}

/// What to compute, with the mode-specific settings resolved.
#[derive(Debug, Clone, PartialEq)]
pub enum RunSpec {
    Evolve {
        t_max: f64,
    },
    SpectrumSweep {
        axis: SweepAxis,
        range: (f64, f64),
        points: usize,
        analytic_levels: bool,
    },
    Chi {
        range: (f64, f64),
        points: usize,
    },
    EffectiveCompare {
        t_max: f64,
    },
    ValiditySweep {
        omega_range: (f64, f64),
        points: usize,
        window: f64,
    },
}

/// A fully validated experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub params: LatticeParams,
    pub scaling: FrequencyScaling,
    pub initial: InitialState,
    pub run: RunSpec,
    pub integrator: IntegratorConfig,
    pub track_sites: Vec<i32>,
    /// Output file stem; the runner appends `.csv` (and `_model.csv` /
    /// `_analytic.csv` for paired artifacts).
    pub output: String,
}

impl ExperimentConfig {
    /// Builds the initial wavefunction for these parameters. The config
    /// builder has already validated the state, so this cannot fail.
    pub fn initial_state(&self) -> SpinorWavefunction {
        match &self.initial {
            InitialState::Basis { site, spin } => {
                SpinorWavefunction::basis_state(&self.params, *site, *spin)
                    .expect("validated basis state")
            }
            InitialState::Amplitudes(amps) => {
                SpinorWavefunction::new(Array1::from_vec(amps.clone()))
                    .expect("validated amplitude vector")
            }
        }
    }
}

/// Every accepted key. Unknown keys are rejected with this list's spelling.
const KNOWN_KEYS: &[&str] = &[
    "mode",
    "n_sites",
    "hopping",
    "alpha",
    "omega",
    "zeeman",
    "zeeman_over_omega",
    "epsilon0",
    "epsilon0_over_omega",
    "drive_amplitude",
    "f_over_omega",
    "steps_per_period",
    "samples_per_period",
    "initial_site",
    "initial_spin",
    "initial_amplitudes",
    "t_max",
    "axis",
    "axis_min",
    "axis_max",
    "axis_points",
    "analytic_levels",
    "omega_min",
    "omega_max",
    "omega_points",
    "window",
    "track_sites",
    "output",
];

/// Keys that give the same physical quantity in two forms; at most one form
/// may appear per layer, and a later layer replaces the whole group.
const EXCLUSIVE_GROUPS: &[&[&str]] = &[
    &["zeeman", "zeeman_over_omega"],
    &["epsilon0", "epsilon0_over_omega"],
    &["drive_amplitude", "f_over_omega"],
    &["initial_site", "initial_amplitudes"],
    &["initial_spin", "initial_amplitudes"],
];

/// Splits config text into raw entries: one `key = value` per line, `#`
/// starts a comment, blank lines are skipped.
pub fn file_entries(text: &str) -> Result<Vec<Entry>, ParseError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let source = Source::Line(i + 1);
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ParseError::at(source, format!("expected `key = value`, got `{line}`"))
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(ParseError::at(source, "missing key before `=`"));
        }
        if value.is_empty() {
            return Err(ParseError::at(source, format!("empty value for key `{key}`")));
        }
        entries.push(Entry::new(key, value, source));
    }
    Ok(entries)
}

/// Parses trailing CLI tokens of the form `--key value --key value …`.
pub fn override_entries(tokens: &[String]) -> Result<Vec<Entry>, ParseError> {
    let mut entries = Vec::new();
    let mut it = tokens.iter();
    while let Some(flag) = it.next() {
        let source = Source::Override(entries.len() + 1);
        let key = flag.strip_prefix("--").ok_or_else(|| {
            ParseError::at(
                source,
                format!("expected an override flag like `--t_max`, got `{flag}`"),
            )
        })?;
        if key.is_empty() {
            return Err(ParseError::at(source, "empty override key `--`"));
        }
        let value = it.next().ok_or_else(|| {
            ParseError::at(source, format!("override `--{key}` is missing its value"))
        })?;
        entries.push(Entry::new(key, value, source));
    }
    Ok(entries)
}

/// Parses a standalone config text into a validated experiment description.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ParseError> {
    build(&file_entries(text)?)
}

/// Resolves layered entries into a validated experiment description.
pub fn build(entries: &[Entry]) -> Result<ExperimentConfig, ParseError> {
    for e in entries {
        if !KNOWN_KEYS.contains(&e.key.as_str()) {
            return Err(ParseError::at(e.source, format!("unknown key `{}`", e.key)));
        }
    }
    // Reject duplicates within one layer: a file (or preset, or override
    // list) that sets the same key twice is a mistake, not an override.
    for (i, e) in entries.iter().enumerate() {
        for earlier in &entries[..i] {
            if earlier.key == e.key && earlier.source.layer() == e.source.layer() {
                return Err(ParseError::at(
                    e.source,
                    format!(
                        "duplicate key `{}` (already set at {})",
                        e.key, earlier.source
                    ),
                ));
            }
        }
    }
    // Two forms of the same quantity in one layer conflict; across layers
    // the later layer silently replaces the whole group.
    for group in EXCLUSIVE_GROUPS {
        for (i, e) in entries.iter().enumerate() {
            if !group.contains(&e.key.as_str()) {
                continue;
            }
            for earlier in &entries[..i] {
                if group.contains(&earlier.key.as_str())
                    && earlier.key != e.key
                    && earlier.source.layer() == e.source.layer()
                {
                    return Err(ParseError::at(
                        e.source,
                        format!(
                            "key `{}` conflicts with `{}` (set at {}); give the quantity in one form",
                            e.key, earlier.key, earlier.source
                        ),
                    ));
                }
            }
        }
    }
    let resolved = Resolved::collect(entries);
    resolved.finish()
}

/// Effective per-key winners after layering, plus typed readers.
struct Resolved<'a> {
    entries: Vec<&'a Entry>,
}

impl<'a> Resolved<'a> {
    fn collect(entries: &'a [Entry]) -> Self {
        let mut winners: Vec<&Entry> = Vec::new();
        for e in entries {
            match winners.iter_mut().find(|w| w.key == e.key) {
                Some(slot) => {
                    if e.source.layer() >= slot.source.layer() {
                        *slot = e;
                    }
                }
                None => winners.push(e),
            }
        }
        // Within each exclusive group keep only the form from the highest
        // layer; drop superseded forms from lower layers.
        for group in EXCLUSIVE_GROUPS {
            let top = winners
                .iter()
                .filter(|w| group.contains(&w.key.as_str()))
                .map(|w| w.source.layer())
                .max();
            if let Some(top) = top {
                winners.retain(|w| {
                    !group.contains(&w.key.as_str()) || w.source.layer() == top
                });
            }
        }
        Resolved { entries: winners }
    }

    fn get(&self, key: &str) -> Option<&&Entry> {
        self.entries.iter().find(|e| e.key == key)
    }

    fn f64(&self, key: &str, default: f64) -> Result<(f64, Source), ParseError> {
        match self.get(key) {
            None => Ok((default, Source::Default)),
            Some(e) => {
                let x: f64 = e.value.parse().map_err(|_| {
                    ParseError::at(
                        e.source,
                        format!("key `{}` expects a number, got `{}`", e.key, e.value),
                    )
                })?;
                if !x.is_finite() {
                    return Err(ParseError::at(
                        e.source,
                        format!("key `{}` must be finite, got `{}`", e.key, e.value),
                    ));
                }
                Ok((x, e.source))
            }
        }
    }

    fn usize(&self, key: &str, default: usize) -> Result<(usize, Source), ParseError> {
        match self.get(key) {
            None => Ok((default, Source::Default)),
            Some(e) => {
                let n: usize = e.value.parse().map_err(|_| {
                    ParseError::at(
                        e.source,
                        format!(
                            "key `{}` expects a non-negative integer, got `{}`",
                            e.key, e.value
                        ),
                    )
                })?;
                Ok((n, e.source))
            }
        }
    }

    fn bool(&self, key: &str, default: bool) -> Result<bool, ParseError> {
        match self.get(key) {
            None => Ok(default),
            Some(e) => match e.value.as_str() {
                "true" => Ok(true),
                "false" => Ok(false),
                other => Err(ParseError::at(
                    e.source,
                    format!("key `{}` expects `true` or `false`, got `{other}`", e.key),
                )),
            },
        }
    }

    fn finish(&self) -> Result<ExperimentConfig, ParseError> {
        let mode = match self.get("mode") {
            None => Mode::Evolve,
            Some(e) => match e.value.as_str() {
                "evolve" => Mode::Evolve,
                "spectrum" => Mode::Spectrum,
                "chi" => Mode::Chi,
                "effective" => Mode::Effective,
                "validity" => Mode::Validity,
                other => {
                    return Err(ParseError::at(
                        e.source,
                        format!(
                            "unknown mode `{other}`; expected evolve, spectrum, chi, \
                             effective, or validity"
                        ),
                    ))
                }
            },
        };

        let (n_sites, n_src) = self.usize("n_sites", 21)?;
        if n_sites < 3 || n_sites % 2 == 0 {
            return Err(ParseError::at(
                n_src,
                format!("n_sites must be odd and at least 3, got {n_sites}"),
            ));
        }
        let (hopping, hop_src) = self.f64("hopping", 1.0)?;
        if hopping < 0.0 {
            return Err(ParseError::at(
                hop_src,
                format!("hopping must be non-negative, got {hopping}"),
            ));
        }
        let (alpha, _) = self.f64("alpha", 0.0)?;
        let (omega, omega_src) = self.f64("omega", 20.0)?;
        if omega <= 0.0 {
            return Err(ParseError::at(
                omega_src,
                format!("omega must be positive, got {omega}"),
            ));
        }

        let scaled = |abs_key: &str, ratio_key: &str, default: Scaled| -> Result<Scaled, ParseError> {
            if self.get(abs_key).is_some() {
                let (x, _) = self.f64(abs_key, 0.0)?;
                Ok(Scaled::Absolute(x))
            } else if self.get(ratio_key).is_some() {
                let (r, _) = self.f64(ratio_key, 0.0)?;
                Ok(Scaled::RatioToOmega(r))
            } else {
                Ok(default)
            }
        };
        // Defaults are the canonical operating point: Ω = 20 in absolute
        // units, resonant impurity ε₀ = ω, drive at the first
        // spin-conserving collapse F/ω = 2.405.
        let zeeman = scaled("zeeman", "zeeman_over_omega", Scaled::Absolute(20.0))?;
        let epsilon0 = scaled("epsilon0", "epsilon0_over_omega", Scaled::RatioToOmega(1.0))?;
        let drive = scaled("drive_amplitude", "f_over_omega", Scaled::RatioToOmega(2.405))?;
        let scaling = FrequencyScaling {
            zeeman,
            epsilon0,
            drive,
        };
        let params = scaling
            .params_at(
                &LatticeParams {
                    n_sites,
                    hopping,
                    soc_angle: alpha,
                    ..LatticeParams::default()
                },
                omega,
            )
            .validated()
            .map_err(|e| ParseError::at(Source::Default, e.to_string()))?;

        // 16384 steps per drive period: long runs at the strongest drives
        // used here (amplitude ≈ 77 for 100+ time units) lose ≈ 1.2e-9 of
        // norm per period at this resolution, which keeps the integrator's
        // 1e-6 drift gate comfortable; half the resolution breaches it.
        let (steps, steps_src) = self.usize("steps_per_period", 16384)?;
        let (samples, samples_src) = self.usize("samples_per_period", 64)?;
        let integrator = IntegratorConfig::new(steps)
            .map_err(|e| ParseError::at(steps_src, e.to_string()))?
            .with_samples_per_period(samples)
            .map_err(|e| ParseError::at(samples_src, e.to_string()))?;

        let initial = self.initial_state(&params)?;

        let run = self.run_spec(mode, &scaling)?;

        let track_sites = self.track_sites(&params)?;

        let output = match self.get("output") {
            None => mode.name().to_string(),
            Some(e) => {
                let stem = e.value.as_str();
                let ok = !stem.is_empty()
                    && !stem.starts_with('-')
                    && stem
                        .chars()
                        .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
                if !ok {
                    return Err(ParseError::at(
                        e.source,
                        format!(
                            "output must be a plain file stem (letters, digits, `_`, `-`, `.`), \
                             got `{stem}`"
                        ),
                    ));
                }
                stem.to_string()
            }
        };

        // Type-check keys that the chosen mode does not consume, so a typo
        // in an inactive key never passes silently.
        self.f64("t_max", 0.0).map(|_| ())?;
        self.f64("axis_min", 0.0).map(|_| ())?;
        self.f64("axis_max", 0.0).map(|_| ())?;
        self.usize("axis_points", 0).map(|_| ())?;
        self.bool("analytic_levels", false).map(|_| ())?;
        self.f64("omega_min", 0.0).map(|_| ())?;
        self.f64("omega_max", 0.0).map(|_| ())?;
        self.usize("omega_points", 0).map(|_| ())?;
        self.f64("window", 0.0).map(|_| ())?;
        if let Some(e) = self.get("axis") {
            parse_axis(e)?;
        }

        Ok(ExperimentConfig {
            params,
            scaling,
            initial,
            run,
            integrator,
            track_sites,
            output,
        })
    }

    fn initial_state(&self, params: &LatticeParams) -> Result<InitialState, ParseError> {
        if let Some(e) = self.get("initial_amplitudes") {
            let mut amps = Vec::new();
            for part in e.value.split(',') {
                let part = part.trim();
                let (re, im) = part.split_once(':').ok_or_else(|| {
                    ParseError::at(
                        e.source,
                        format!(
                            "initial_amplitudes expects comma-separated `re:im` pairs, got `{part}`"
                        ),
                    )
                })?;
                let re: f64 = re.trim().parse().map_err(|_| {
                    ParseError::at(e.source, format!("bad real part `{re}` in initial_amplitudes"))
                })?;
                let im: f64 = im.trim().parse().map_err(|_| {
                    ParseError::at(
                        e.source,
                        format!("bad imaginary part `{im}` in initial_amplitudes"),
                    )
                })?;
                amps.push(C64::new(re, im));
            }
            if amps.len() != params.dim() {
                return Err(ParseError::at(
                    e.source,
                    format!(
                        "initial_amplitudes has {} entries; the chain needs {} (2 per site)",
                        amps.len(),
                        params.dim()
                    ),
                ));
            }
            let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if (norm - 1.0).abs() > 1e-6 {
                return Err(ParseError::at(
                    e.source,
                    format!("initial state must normalize to 1, got norm {norm:.9}"),
                ));
            }
            // Rescale the microscopic remainder so downstream admission
            // (tolerance 1e-9) always accepts the state.
            for z in &mut amps {
                *z /= norm;
            }
            return Ok(InitialState::Amplitudes(amps));
        }
        let site = match self.get("initial_site") {
            None => -1,
            Some(e) => e.value.parse::<i32>().map_err(|_| {
                ParseError::at(
                    e.source,
                    format!("initial_site expects an integer, got `{}`", e.value),
                )
            })?,
        };
        let spin = match self.get("initial_spin") {
            None => Spin::Up,
            Some(e) => match e.value.as_str() {
                "up" => Spin::Up,
                "down" => Spin::Down,
                other => {
                    return Err(ParseError::at(
                        e.source,
                        format!("initial_spin expects `up` or `down`, got `{other}`"),
                    ))
                }
            },
        };
        if params.state_index(site, spin).is_none() {
            let src = self
                .get("initial_site")
                .map(|e| e.source)
                .unwrap_or(Source::Default);
            return Err(ParseError::at(
                src,
                format!(
                    "initial_site {site} is outside the chain of {} sites",
                    params.n_sites
                ),
            ));
        }
        Ok(InitialState::Basis { site, spin })
    }

    fn run_spec(&self, mode: Mode, scaling: &FrequencyScaling) -> Result<RunSpec, ParseError> {
        let t_max = || -> Result<f64, ParseError> {
            let (t, src) = self.f64("t_max", 100.0)?;
            if t <= 0.0 {
                return Err(ParseError::at(src, format!("t_max must be positive, got {t}")));
            }
            Ok(t)
        };
        let axis_grid = || -> Result<((f64, f64), usize), ParseError> {
            let (lo, _) = self.f64("axis_min", 0.0)?;
            let (hi, hi_src) = self.f64("axis_max", 8.0)?;
            if !(hi > lo) {
                return Err(ParseError::at(
                    hi_src,
                    format!("axis range needs axis_max > axis_min, got [{lo}, {hi}]"),
                ));
            }
            let (points, pts_src) = self.usize("axis_points", 161)?;
            if points < 2 {
                return Err(ParseError::at(
                    pts_src,
                    format!("axis_points must be at least 2, got {points}"),
                ));
            }
            Ok(((lo, hi), points))
        };
        match mode {
            Mode::Evolve => Ok(RunSpec::Evolve { t_max: t_max()? }),
            Mode::Effective => Ok(RunSpec::EffectiveCompare { t_max: t_max()? }),
            Mode::Spectrum => {
                let axis = match self.get("axis") {
                    None => SweepAxis::DriveRatio,
                    Some(e) => parse_axis(e)?,
                };
                let (range, points) = axis_grid()?;
                if axis == SweepAxis::DriveRatio && range.0 < 0.0 {
                    return Err(ParseError::at(
                        self.f64("axis_min", 0.0)?.1,
                        format!("a drive-ratio sweep cannot go negative (axis_min = {})", range.0),
                    ));
                }
                let analytic_levels = self.bool("analytic_levels", false)?;
                Ok(RunSpec::SpectrumSweep {
                    axis,
                    range,
                    points,
                    analytic_levels,
                })
            }
            Mode::Chi => {
                let (range, points) = axis_grid()?;
                if range.0 < 0.0 {
                    return Err(ParseError::at(
                        self.f64("axis_min", 0.0)?.1,
                        format!("chi tables need a non-negative drive ratio (axis_min = {})", range.0),
                    ));
                }
                Ok(RunSpec::Chi { range, points })
            }
            Mode::Validity => {
                let (lo, lo_src) = self.f64("omega_min", 4.0)?;
                let (hi, hi_src) = self.f64("omega_max", 24.0)?;
                if lo <= 0.0 {
                    return Err(ParseError::at(
                        lo_src,
                        format!("omega_min must be positive, got {lo}"),
                    ));
                }
                if !(hi > lo) {
                    return Err(ParseError::at(
                        hi_src,
                        format!("omega range needs omega_max > omega_min, got [{lo}, {hi}]"),
                    ));
                }
                let (points, pts_src) = self.usize("omega_points", 6)?;
                if points < 2 {
                    return Err(ParseError::at(
                        pts_src,
                        format!("omega_points must be at least 2, got {points}"),
                    ));
                }
                let (window, win_src) = self.f64("window", 200.0)?;
                if window <= 0.0 {
                    return Err(ParseError::at(
                        win_src,
                        format!("window must be positive, got {window}"),
                    ));
                }
                // A frequency sweep re-derives the energies at every grid
                // point, which only makes sense for ratio-form input.
                for (name, value, keys) in [
                    ("impurity", scaling.epsilon0, "epsilon0_over_omega"),
                    ("drive amplitude", scaling.drive, "f_over_omega"),
                ] {
                    if !value.is_ratio() {
                        let src = self
                            .get(if keys == "f_over_omega" {
                                "drive_amplitude"
                            } else {
                                "epsilon0"
                            })
                            .map(|e| e.source)
                            .unwrap_or(Source::Default);
                        return Err(ParseError::at(
                            src,
                            format!(
                                "a validity sweep varies omega, so the {name} must be given \
                                 as a ratio (`{keys}`), not in absolute units"
                            ),
                        ));
                    }
                }
                Ok(RunSpec::ValiditySweep {
                    omega_range: (lo, hi),
                    points,
                    window,
                })
            }
        }
    }

    fn track_sites(&self, params: &LatticeParams) -> Result<Vec<i32>, ParseError> {
        match self.get("track_sites") {
            None => Ok(vec![-1, 0, 1]),
            Some(e) => {
                let mut sites = Vec::new();
                for part in e.value.split(',') {
                    let site: i32 = part.trim().parse().map_err(|_| {
                        ParseError::at(
                            e.source,
                            format!("track_sites expects integers, got `{}`", part.trim()),
                        )
                    })?;
                    if params.state_index(site, Spin::Up).is_none() {
                        return Err(ParseError::at(
                            e.source,
                            format!(
                                "track_sites entry {site} is outside the chain of {} sites",
                                params.n_sites
                            ),
                        ));
                    }
                    if sites.contains(&site) {
                        return Err(ParseError::at(
                            e.source,
                            format!("track_sites lists site {site} twice"),
                        ));
                    }
                    sites.push(site);
                }
                if sites.is_empty() {
                    return Err(ParseError::at(e.source, "track_sites is empty"));
                }
                Ok(sites)
            }
        }
    }
}

fn parse_axis(e: &Entry) -> Result<SweepAxis, ParseError> {
    match e.value.as_str() {
        "f_over_omega" => Ok(SweepAxis::DriveRatio),
        "epsilon0_over_omega" => Ok(SweepAxis::ImpurityRatio),
        other => Err(ParseError::at(
            e.source,
            format!(
                "axis expects `f_over_omega` or `epsilon0_over_omega`, got `{other}`"
            ),
        )),
    }
}
