use std::f64::consts::PI;
use std::path::PathBuf;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::control::{DurationConvention, EtaProfile};
use crate::dynamics::MAX_PHOTONS;
use crate::error::{Error, Result};
use crate::gates::GatePreset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    Fig1a,
    Fig1b,
    Fig2Dynamics,
    Fig2DecaySweep,
    Fig2DephasingSweep,
    TwoQubitCheck,
    Custom,
}

impl Scenario {
    pub const ALL: [Scenario; 7] = [
        Scenario::Fig1a,
        Scenario::Fig1b,
        Scenario::Fig2Dynamics,
        Scenario::Fig2DecaySweep,
        Scenario::Fig2DephasingSweep,
        Scenario::TwoQubitCheck,
        Scenario::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Fig1a => "fig1a",
            Scenario::Fig1b => "fig1b",
            Scenario::Fig2Dynamics => "fig2-dynamics",
            Scenario::Fig2DecaySweep => "fig2-decay-sweep",
            Scenario::Fig2DephasingSweep => "fig2-dephasing-sweep",
            Scenario::TwoQubitCheck => "two-qubit-check",
            Scenario::Custom => "custom",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    fn is_fig1(self) -> bool {
        matches!(self, Scenario::Fig1a | Scenario::Fig1b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GateSpec {
    Not,
    Hadamard,
    Custom { theta: f64, gamma: f64, phi: f64 },
}

impl GateSpec {
    /// (θ, γ, φ)
    pub fn params(self) -> (f64, f64, f64) {
        match self {
            GateSpec::Not => GatePreset::Not.params(),
            GateSpec::Hadamard => GatePreset::Hadamard.params(),
            GateSpec::Custom { theta, gamma, phi } => (theta, gamma, phi),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GateSpec::Not => "NOT",
            GateSpec::Hadamard => "Hadamard",
            GateSpec::Custom { .. } => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScheduleChoice {
    FixedRate,
    FixedAmplitude,
    Both,
}

impl ScheduleChoice {
    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "fixed-rate" => Some(ScheduleChoice::FixedRate),
            "fixed-amplitude" => Some(ScheduleChoice::FixedAmplitude),
            "both" => Some(ScheduleChoice::Both),
            _ => None,
        }
    }

    /// Fixed-amplitude first when both are requested.
    pub fn conventions(self) -> Vec<DurationConvention> {
        match self {
            ScheduleChoice::FixedRate => vec![DurationConvention::FixedRate],
            ScheduleChoice::FixedAmplitude => vec![DurationConvention::FixedAmplitude],
            ScheduleChoice::Both => vec![DurationConvention::FixedAmplitude, DurationConvention::FixedRate],
        }
    }
}

/// Decoherence rates in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rates {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma_phi: f64,
}

/// Γ = 2π × 8 MHz
pub const DEFAULT_GAMMA: f64 = 2.0 * PI * 8e6;
/// Ω₀ = 2π × 300 MHz
pub const DEFAULT_OMEGA0: f64 = 2.0 * PI * 300e6;

impl Default for Rates {
    fn default() -> Self {
        Self { gamma1: DEFAULT_GAMMA, gamma2: DEFAULT_GAMMA / 2.0, gamma_phi: 2.0 * DEFAULT_GAMMA }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    /// Γ₁, with Γ₂ = Γ₁/2 locked.
    Gamma1,
    Gamma2,
    GammaPhi,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::Gamma1 => "gamma1",
            SweepParam::Gamma2 => "gamma2",
            SweepParam::GammaPhi => "gamma_phi",
        }
    }

    fn parse(name: &str) -> Option<Self> {
        [SweepParam::Gamma1, SweepParam::Gamma2, SweepParam::GammaPhi].into_iter().find(|p| p.name() == name)
    }

    pub fn apply(self, base: Rates, value: f64) -> Rates {
        match self {
            SweepParam::Gamma1 => Rates { gamma1: value, gamma2: value / 2.0, ..base },
            SweepParam::Gamma2 => Rates { gamma2: value, ..base },
            SweepParam::GammaPhi => Rates { gamma_phi: value, ..base },
        }
    }
}

/// Linear sweep of one rate, endpoints in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        (0..self.points).map(|i| self.start + (self.end - self.start) * i as f64 / (self.points - 1) as f64).collect()
    }
}

/// Two-emitter cavity check, rates in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoQubitSpec {
    pub g: f64,
    pub omega: f64,
    pub delta: f64,
    pub n_max: usize,
    pub k: u32,
    pub gamma: f64,
    pub steps: usize,
    pub smooth: bool,
}

impl Default for TwoQubitSpec {
    fn default() -> Self {
        Self {
            g: 2.0 * PI * 10e6,
            omega: 2.0 * PI * 10e6,
            delta: 2.0 * PI * 200e6,
            n_max: 2,
            k: 10,
            gamma: PI,
            steps: 2000,
            smooth: true,
        }
    }
}

/// A validated experiment description. All frequencies are in rad/s.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub scenario: Option<Scenario>,
    pub gates: Vec<GateSpec>,
    pub k_list: Vec<u32>,
    /// Geometric phase for fig1a.
    pub gamma: f64,
    /// Geometric phases for fig1b.
    pub gamma_list: Vec<f64>,
    pub schedule: ScheduleChoice,
    pub profile: String,
    pub omega0: f64,
    pub rates: Rates,
    pub sweep: Option<SweepSpec>,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub n_zeta: usize,
    pub time_samples: usize,
    pub steps_per_period: f64,
    pub min_steps: usize,
    pub schedule_samples: usize,
    pub two_qubit: TwoQubitSpec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            scenario: None,
            gates: vec![GateSpec::Not, GateSpec::Hadamard],
            k_list: vec![1, 100, 1000],
            gamma: PI,
            gamma_list: (1..20).map(|i| 2.0 * PI * i as f64 / 20.0).collect(),
            schedule: ScheduleChoice::Both,
            profile: "linear".into(),
            omega0: DEFAULT_OMEGA0,
            rates: Rates::default(),
            sweep: None,
            seed: 0,
            output_dir: PathBuf::from("out"),
            n_zeta: 1001,
            time_samples: 101,
            steps_per_period: 50.0,
            min_steps: 1000,
            schedule_samples: 2001,
            two_qubit: TwoQubitSpec::default(),
        }
    }
}

impl ExperimentConfig {
    /// Defaults for one scenario, before any user keys are applied.
    pub fn for_scenario(scenario: Scenario) -> Self {
        let mut c = Self { scenario: Some(scenario), ..Self::default() };
        match scenario {
            Scenario::Fig1a => c.k_list = (1..=20).collect(),
            Scenario::Fig1b => c.k_list = vec![10],
            Scenario::Fig2DecaySweep | Scenario::Fig2DephasingSweep => c.k_list = vec![1, 100],
            Scenario::Custom => {
                c.k_list = vec![1];
                c.gates = vec![GateSpec::Not];
                c.schedule = ScheduleChoice::FixedAmplitude;
            }
            _ => {}
        }
        c.sweep = c.default_sweep();
        c
    }

    pub fn scenario(&self) -> Result<Scenario> {
        self.scenario.ok_or_else(|| Error::Validation(vec!["scenario required".into()]))
    }

    pub fn eta_profile(&self) -> EtaProfile {
        EtaProfile::parse(&self.profile).unwrap_or(EtaProfile::Linear)
    }

    fn default_sweep(&self) -> Option<SweepSpec> {
        match self.scenario? {
            Scenario::Fig2DecaySweep => {
                Some(SweepSpec { param: SweepParam::Gamma1, start: 0.0, end: 4.0 * DEFAULT_GAMMA, points: 10 })
            }
            Scenario::Fig2DephasingSweep => {
                Some(SweepSpec { param: SweepParam::GammaPhi, start: 0.0, end: 8.0 * DEFAULT_GAMMA, points: 10 })
            }
            _ => None,
        }
    }

    /// Canonical JSON used for the provenance hash.
    pub fn canonical_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

const TOP_KEYS: &[&str] = &[
    "scenario",
    "gate",
    "k_list",
    "gamma",
    "gamma_list",
    "schedule",
    "profile",
    "omega0_mhz",
    "x2pi",
    "rates",
    "sweep",
    "seed",
    "output_dir",
    "n_zeta",
    "time_samples",
    "steps_per_period",
    "min_steps",
    "schedule_samples",
    "two_qubit",
];
const RATE_KEYS: &[&str] = &["gamma1_mhz", "gamma2_mhz", "gamma_phi_mhz"];
const SWEEP_KEYS: &[&str] = &["param", "start_mhz", "end_mhz", "points"];
const TWO_QUBIT_KEYS: &[&str] = &["g_mhz", "omega_mhz", "delta_mhz", "n_max", "k", "gamma", "steps", "smooth"];
const GATE_KEYS: &[&str] = &["theta", "gamma", "phi"];

struct Reader {
    errors: Vec<String>,
}

impl Reader {
    fn object<'a>(&mut self, v: &'a Value, path: &str, allowed: &[&str]) -> Option<&'a Map<String, Value>> {
        let Some(map) = v.as_object() else {
            self.errors.push(format!("{path}: expected an object"));
            return None;
        };
        for key in map.keys() {
            if !allowed.contains(&key.as_str()) {
                let at = if path.is_empty() { key.clone() } else { format!("{path}.{key}") };
                self.errors.push(format!("unknown key '{at}'"));
            }
        }
        Some(map)
    }

    fn number(&mut self, map: &Map<String, Value>, key: &str, path: &str) -> Option<f64> {
        let v = map.get(key)?;
        match v.as_f64() {
            Some(x) if x.is_finite() => Some(x),
            _ => {
                self.errors.push(format!("{path}{key}: expected a number"));
                None
            }
        }
    }

    fn integer(&mut self, map: &Map<String, Value>, key: &str, path: &str) -> Option<i64> {
        let v = map.get(key)?;
        match v.as_i64() {
            Some(x) => Some(x),
            None => {
                self.errors.push(format!("{path}{key}: expected an integer"));
                None
            }
        }
    }

    fn count(&mut self, map: &Map<String, Value>, key: &str, path: &str, min: i64) -> Option<usize> {
        let x = self.integer(map, key, path)?;
        if x < min {
            self.errors.push(format!("{path}{key} must be ≥ {min} (got {x})"));
            return None;
        }
        Some(x as usize)
    }

    fn string<'a>(&mut self, map: &'a Map<String, Value>, key: &str, path: &str) -> Option<&'a str> {
        let v = map.get(key)?;
        match v.as_str() {
            Some(s) => Some(s),
            None => {
                self.errors.push(format!("{path}{key}: expected a string"));
                None
            }
        }
    }

    fn boolean(&mut self, map: &Map<String, Value>, key: &str, path: &str) -> Option<bool> {
        let v = map.get(key)?;
        match v.as_bool() {
            Some(b) => Some(b),
            None => {
                self.errors.push(format!("{path}{key}: expected true or false"));
                None
            }
        }
    }

    fn rate(&mut self, map: &Map<String, Value>, key: &str, path: &str, unit: f64) -> Option<f64> {
        let x = self.number(map, key, path)?;
        if x < 0.0 {
            self.errors.push(format!("rates must be non-negative ({path}{key} = {x})"));
            return None;
        }
        Some(x * unit)
    }

    fn gate(&mut self, v: &Value) -> Option<GateSpec> {
        if let Some(name) = v.as_str() {
            return match name.to_ascii_lowercase().as_str() {
                "not" | "x" => Some(GateSpec::Not),
                "hadamard" | "h" => Some(GateSpec::Hadamard),
                _ => {
                    self.errors.push(format!("gate: unknown gate '{name}' (NOT, Hadamard or {{theta, gamma, phi}})"));
                    None
                }
            };
        }
        let map = self.object(v, "gate", GATE_KEYS)?;
        let mut take = |key: &str| {
            let x = self.number(map, key, "gate.");
            if x.is_none() && !map.contains_key(key) {
                self.errors.push(format!("gate.{key} required for a custom gate"));
            }
            x
        };
        let (theta, gamma, phi) = (take("theta"), take("gamma"), take("phi"));
        Some(GateSpec::Custom { theta: theta?, gamma: gamma?, phi: phi? })
    }
}

/// Parse a JSON config, apply defaults and collect every violation.
///
/// The returned config is filled in as far as possible even when errors
/// are reported.
pub fn inspect_config(text: &str) -> (ExperimentConfig, Vec<String>) {
    let mut rd = Reader { errors: Vec::new() };
    let value: Value = if text.trim().is_empty() {
        Value::Object(Map::new())
    } else {
        match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => return (ExperimentConfig::default(), vec![format!("config is not valid JSON: {e}")]),
        }
    };
    let Some(top) = rd.object(&value, "", TOP_KEYS) else {
        return (ExperimentConfig::default(), rd.errors);
    };

    let scenario = match rd.string(top, "scenario", "") {
        Some(name) => match Scenario::parse(name) {
            Some(s) => Some(s),
            None => {
                let names: Vec<&str> = Scenario::ALL.iter().map(|s| s.name()).collect();
                rd.errors.push(format!("scenario: unknown '{name}' (one of {})", names.join(", ")));
                None
            }
        },
        None => {
            if !top.contains_key("scenario") {
                rd.errors.push("scenario required".into());
            }
            None
        }
    };
    let mut cfg = match scenario {
        Some(s) => ExperimentConfig::for_scenario(s),
        None => ExperimentConfig::default(),
    };

    let x2pi = rd.boolean(top, "x2pi", "").unwrap_or(true);
    let unit = if x2pi { 2.0 * PI * 1e6 } else { 1e6 };

    if let Some(v) = top.get("gate") {
        let items: Vec<&Value> = match v.as_array() {
            Some(a) => a.iter().collect(),
            None => vec![v],
        };
        if items.is_empty() {
            rd.errors.push("gate: list is empty".into());
        }
        let gates: Vec<GateSpec> = items.into_iter().filter_map(|g| rd.gate(g)).collect();
        if !gates.is_empty() {
            cfg.gates = gates;
        }
    }

    let mut raw_k: Vec<i64> = cfg.k_list.iter().map(|&k| k as i64).collect();
    if let Some(v) = top.get("k_list") {
        let items: Vec<&Value> = match v.as_array() {
            Some(a) => a.iter().collect(),
            None => vec![v],
        };
        raw_k.clear();
        for item in items {
            match item.as_i64() {
                Some(k) => raw_k.push(k),
                None => rd.errors.push(format!("k_list: expected integers, got {item}")),
            }
        }
        if raw_k.is_empty() {
            rd.errors.push("k_list: list is empty".into());
        }
    }
    for &k in &raw_k {
        if k < 1 {
            rd.errors.push(format!("k ≥ 1 required (k_list contains {k})"));
        } else if k > u32::MAX as i64 {
            rd.errors.push(format!("k = {k} too large"));
        }
    }
    cfg.k_list = raw_k.iter().filter(|&&k| k >= 1 && k <= u32::MAX as i64).map(|&k| k as u32).collect();

    if let Some(g) = rd.number(top, "gamma", "") {
        cfg.gamma = g;
    }
    if let Some(v) = top.get("gamma_list") {
        match v.as_array() {
            Some(a) if !a.is_empty() => {
                let list: Vec<f64> = a.iter().filter_map(Value::as_f64).collect();
                if list.len() != a.len() {
                    rd.errors.push("gamma_list: expected numbers".into());
                }
                cfg.gamma_list = list;
            }
            _ => rd.errors.push("gamma_list: expected a non-empty list of numbers".into()),
        }
    }
    if let Some(name) = rd.string(top, "schedule", "") {
        match ScheduleChoice::parse(name) {
            Some(s) => cfg.schedule = s,
            None => rd.errors.push(format!("schedule: unknown '{name}' (fixed-rate, fixed-amplitude or both)")),
        }
    }
    if let Some(name) = rd.string(top, "profile", "") {
        if EtaProfile::parse(name).is_some() {
            cfg.profile = name.to_string();
        } else {
            rd.errors.push(format!("profile: unknown '{name}' (linear or sine-ramp)"));
        }
    }
    if let Some(w) = rd.number(top, "omega0_mhz", "") {
        if w > 0.0 {
            cfg.omega0 = w * unit;
        } else {
            rd.errors.push(format!("omega0_mhz must be positive (got {w})"));
        }
    }
    if let Some(v) = top.get("rates") {
        if let Some(map) = rd.object(v, "rates", RATE_KEYS) {
            let g1 = rd.rate(map, "gamma1_mhz", "rates.", unit);
            let g2 = rd.rate(map, "gamma2_mhz", "rates.", unit);
            let gp = rd.rate(map, "gamma_phi_mhz", "rates.", unit);
            let base = g1.unwrap_or(cfg.rates.gamma1);
            cfg.rates = Rates { gamma1: base, gamma2: g2.unwrap_or(base / 2.0), gamma_phi: gp.unwrap_or(2.0 * base) };
        }
    }
    if let Some(v) = top.get("sweep") {
        if let Some(map) = rd.object(v, "sweep", SWEEP_KEYS) {
            let fallback = cfg.sweep;
            let param = match rd.string(map, "param", "sweep.") {
                Some(name) => SweepParam::parse(name).or_else(|| {
                    rd.errors.push(format!("sweep.param: unknown '{name}' (gamma1, gamma2 or gamma_phi)"));
                    None
                }),
                None => fallback.map(|s| s.param).or_else(|| {
                    rd.errors.push("sweep.param required".into());
                    None
                }),
            };
            let start = rd.rate(map, "start_mhz", "sweep.", unit).or(fallback.map(|s| s.start));
            let end = rd.rate(map, "end_mhz", "sweep.", unit).or(fallback.map(|s| s.end));
            let points = rd.count(map, "points", "sweep.", 1).or(fallback.map(|s| s.points));
            match (param, start, end, points) {
                (Some(param), Some(start), Some(end), Some(points)) => {
                    if end < start {
                        rd.errors.push("sweep range is empty (end_mhz < start_mhz)".into());
                    } else if points > 1 && end == start {
                        rd.errors.push("sweep with several points needs end_mhz > start_mhz".into());
                    }
                    cfg.sweep = Some(SweepSpec { param, start, end, points });
                }
                (Some(_), _, _, _) => rd.errors.push("sweep needs start_mhz, end_mhz and points".into()),
                _ => {}
            }
        }
    }
    if let Some(s) = rd.integer(top, "seed", "") {
        if s < 0 {
            rd.errors.push("seed must be non-negative".into());
        } else {
            cfg.seed = s as u64;
        }
    }
    if let Some(dir) = rd.string(top, "output_dir", "") {
        cfg.output_dir = PathBuf::from(dir);
    }
    if let Some(n) = rd.count(top, "n_zeta", "", 1) {
        cfg.n_zeta = n;
    }
    if let Some(n) = rd.count(top, "time_samples", "", 2) {
        cfg.time_samples = n;
    }
    if let Some(x) = rd.number(top, "steps_per_period", "") {
        if x > 0.0 {
            cfg.steps_per_period = x;
        } else {
            rd.errors.push("steps_per_period must be positive".into());
        }
    }
    if let Some(n) = rd.count(top, "min_steps", "", 1) {
        cfg.min_steps = n;
    }
    if let Some(n) = rd.count(top, "schedule_samples", "", 2) {
        cfg.schedule_samples = n;
    }
    if let Some(v) = top.get("two_qubit") {
        if let Some(map) = rd.object(v, "two_qubit", TWO_QUBIT_KEYS) {
            let tq = &mut cfg.two_qubit;
            for (key, slot) in [("g_mhz", &mut tq.g), ("omega_mhz", &mut tq.omega), ("delta_mhz", &mut tq.delta)] {
                if let Some(x) = rd.number(map, key, "two_qubit.") {
                    if x > 0.0 {
                        *slot = x * unit;
                    } else {
                        rd.errors.push(format!("two_qubit.{key} must be positive (got {x})"));
                    }
                }
            }
            if let Some(n) = rd.count(map, "n_max", "two_qubit.", 1) {
                if n > MAX_PHOTONS {
                    rd.errors.push(format!("two_qubit.n_max must be ≤ {MAX_PHOTONS} (got {n})"));
                } else {
                    tq.n_max = n;
                }
            }
            if let Some(k) = rd.integer(map, "k", "two_qubit.") {
                if k < 1 {
                    rd.errors.push(format!("k ≥ 1 required (two_qubit.k = {k})"));
                }
                tq.k = k.clamp(0, u32::MAX as i64) as u32;
            }
            if let Some(g) = rd.number(map, "gamma", "two_qubit.") {
                tq.gamma = g;
            }
            if let Some(n) = rd.count(map, "steps", "two_qubit.", 10) {
                tq.steps = n;
            }
            if let Some(b) = rd.boolean(map, "smooth", "two_qubit.") {
                tq.smooth = b;
            }
        }
    }

    // χ = arccos(1 − γ/kπ) needs γ ∈ (0, 2kπ).
    let mut phases: Vec<(String, f64)> = Vec::new();
    match scenario {
        Some(Scenario::Fig1a) => phases.push(("gamma".into(), cfg.gamma)),
        Some(Scenario::Fig1b) => phases.extend(cfg.gamma_list.iter().map(|&g| ("gamma_list".into(), g))),
        Some(Scenario::TwoQubitCheck) => {}
        _ => phases.extend(cfg.gates.iter().map(|g| (format!("{} gate", g.label()), g.params().1))),
    }
    let ks: Vec<(String, i64)> = if scenario == Some(Scenario::TwoQubitCheck) {
        vec![("two_qubit.k".into(), cfg.two_qubit.k as i64)]
    } else {
        raw_k.iter().map(|&k| ("k".into(), k)).collect()
    };
    if scenario == Some(Scenario::TwoQubitCheck) {
        phases.push(("two_qubit.gamma".into(), cfg.two_qubit.gamma));
    }
    for (what, gamma) in &phases {
        for (kname, k) in &ks {
            let upper = 2.0 * PI * *k as f64;
            if !(*gamma > 0.0 && *gamma < upper) {
                rd.errors.push(format!("χ undefined: {what} phase {gamma} outside (0, 2kπ) for {kname} = {k}"));
            }
        }
    }
    if matches!(scenario, Some(Scenario::Fig2DecaySweep | Scenario::Fig2DephasingSweep)) && cfg.sweep.is_none() {
        rd.errors.push("sweep scenario needs a sweep block".into());
    }
    if scenario.is_some_and(Scenario::is_fig1) && cfg.k_list.is_empty() && rd.errors.is_empty() {
        rd.errors.push("k_list: list is empty".into());
    }
    (cfg, rd.errors)
}

/// Parse and validate; every violation is reported in one error.
pub fn validate_config(text: &str) -> Result<ExperimentConfig> {
    let (cfg, errors) = inspect_config(text);
    if errors.is_empty() {
        Ok(cfg)
    } else {
        Err(Error::Validation(errors))
    }
}
