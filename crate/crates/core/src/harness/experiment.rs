use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::bound::{bound_value, BoundSpec, Theorem};
use super::family::{EnumeratorHint, FamilySpec};
use super::fit::fit_loglog;
use crate::detmethod::{regime_check, RegimeVariant};
use crate::error::{Error, Result};
use crate::globalfield::{FieldKind, FunctionField, GlobalField, RationalField};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub families: Vec<FamilyConfig>,
    #[serde(default = "default_fields")]
    pub fields: Vec<FieldEntry>,
    #[serde(default)]
    pub heights: Vec<u64>,
    #[serde(default)]
    pub bounds: BoundsConfig,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub budget: Option<u64>,
}

fn default_fields() -> Vec<FieldEntry> {
    vec![FieldEntry::Name("Q".into())]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FamilyConfig {
    pub name: String,
    /// A builtin family name or a polynomial template; defaults to `name`.
    #[serde(default)]
    pub template: Option<String>,
    #[serde(default)]
    pub params: FamilyParams,
    #[serde(default)]
    pub hint: Option<EnumeratorHint>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FamilyParams {
    #[serde(default)]
    pub d: Vec<u32>,
}

impl FamilyConfig {
    pub fn spec(&self) -> FamilySpec {
        let template = self.template.as_deref().unwrap_or(&self.name);
        let mut spec = match FamilySpec::builtin(template) {
            Some(s) => FamilySpec { name: self.name.clone(), ..s },
            None => FamilySpec::user(&self.name, template),
        };
        if let Some(h) = &self.hint {
            spec.hint = h.clone();
        }
        spec
    }
}

/// A field descriptor, optionally with its own list of heights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldEntry {
    Name(String),
    WithHeights { field: String, heights: Vec<u64> },
}

impl FieldEntry {
    fn parts<'a>(&'a self, default: &'a [u64]) -> Result<(FieldKind, &'a [u64])> {
        let (name, hs) = match self {
            FieldEntry::Name(n) => (n, default),
            FieldEntry::WithHeights { field, heights } => (field, heights.as_slice()),
        };
        Ok((name.parse()?, hs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BoundsConfig {
    pub theorem: Theorem,
    pub c: f64,
    pub kappa: u32,
    pub a: f64,
}

impl Default for BoundsConfig {
    fn default() -> Self {
        BoundsConfig { theorem: Theorem::Curve, c: 1.0, kappa: 12, a: 1.0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Count {
    Exact(u64),
    BudgetExceeded,
}

impl Count {
    pub fn exact(self) -> Option<u64> {
        match self {
            Count::Exact(n) => Some(n),
            Count::BudgetExceeded => None,
        }
    }
}

const BUDGET_MARK: &str = "budget_exceeded";

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Count::Exact(n) => s.serialize_u64(*n),
            Count::BudgetExceeded => s.serialize_str(BUDGET_MARK),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Count;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a point count or {BUDGET_MARK:?}")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Count, E> {
                Ok(Count::Exact(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Count, E> {
                u64::try_from(v).map(Count::Exact).map_err(|_| E::custom("negative count"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Count, E> {
                if v == BUDGET_MARK {
                    Ok(Count::BudgetExceeded)
                } else {
                    v.parse().map(Count::Exact).map_err(|_| E::custom(format!("bad count {v:?}")))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub family: String,
    pub field: String,
    pub d: u32,
    #[serde(rename = "H")]
    pub h: u64,
    pub count: Count,
    /// Empty when the bound is undefined (`H <= 2`).
    pub bound: Option<f64>,
    pub ratio: Option<f64>,
    pub regime_ok: bool,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitRecord {
    pub family: String,
    pub field: String,
    pub d: u32,
    pub slope: f64,
    pub intercept: f64,
    /// `exp(intercept)`, the constant of the fitted power law.
    pub fitted_c: f64,
    pub residuals: Vec<f64>,
    pub degenerate: bool,
    /// `2 d_K / d`.
    pub target: f64,
    pub slack: f64,
    /// Largest `count / bound` over the series.
    pub max_ratio: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub rows: Vec<ReportRow>,
    pub fits: Vec<FitRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunInfo {
    pub seed: u64,
    pub threads: usize,
    pub elapsed_ms: u64,
}

impl ExperimentReport {
    pub fn from_rows(rows: Vec<ReportRow>) -> Self {
        let mut fits = Vec::new();
        let mut i = 0;
        while i < rows.len() {
            let key = (&rows[i].family, &rows[i].field, rows[i].d);
            let j = i + rows[i..].iter().take_while(|r| (&r.family, &r.field, r.d) == key).count();
            let series = &rows[i..j];
            let pairs: Vec<(f64, u64)> =
                series.iter().filter_map(|r| r.count.exact().filter(|c| *c > 0).map(|c| (r.h as f64, c))).collect();
            let (hs, cs): (Vec<f64>, Vec<u64>) = pairs.into_iter().unzip();
            if let Ok(fit) = fit_loglog(&hs, &cs) {
                let target = 2.0 / key.2 as f64;
                let max_ratio = series.iter().filter_map(|r| r.ratio).reduce(f64::max);
                fits.push(FitRecord {
                    family: key.0.clone(),
                    field: key.1.clone(),
                    d: key.2,
                    slope: fit.slope,
                    intercept: fit.intercept,
                    fitted_c: fit.intercept.exp(),
                    slack: fit.slack(target),
                    residuals: fit.residuals,
                    degenerate: fit.degenerate,
                    target,
                    max_ratio,
                });
            }
            i = j;
        }
        ExperimentReport { rows, fits }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        if self.rows.is_empty() {
            w.write_record(["family", "field", "d", "H", "count", "bound", "ratio", "regime_ok", "elapsed_ms"])
                .map_err(csv_err)?;
        }
        for r in &self.rows {
            w.serialize(r).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Internal(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let rows = r.deserialize().collect::<std::result::Result<Vec<ReportRow>, _>>().map_err(csv_err)?;
        Ok(Self::from_rows(rows))
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Config(format!("csv: {e}"))
}

struct Job<'a> {
    family: FamilySpec,
    kind: FieldKind,
    d: u32,
    h: u64,
    cfg: &'a ExperimentConfig,
}

fn run_job<K: GlobalField>(k: &K, job: &Job) -> Result<ReportRow> {
    let start = Instant::now();
    let count = match job.family.count(k, job.d, job.h, job.cfg.budget) {
        Ok(n) => Count::Exact(n),
        Err(Error::BudgetExceeded { .. }) => Count::BudgetExceeded,
        Err(e) => return Err(e),
    };
    let b = &job.cfg.bounds;
    let spec = BoundSpec { theorem: b.theorem, c: b.c, kappa: b.kappa, d_k: k.d_k() };
    let bound = match bound_value(&spec, job.d, job.h as f64, 2) {
        Ok(v) => Some(v),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(e),
    };
    let ratio = match (count, bound) {
        (Count::Exact(n), Some(v)) => Some(n as f64 / v),
        _ => None,
    };
    let variant = match k.kind() {
        FieldKind::Rationals => RegimeVariant::CurveQ,
        FieldKind::FunctionField(_) => RegimeVariant::CurveK,
    };
    let regime_ok = regime_check(job.d, job.h as f64, variant).ok;
    Ok(ReportRow {
        family: job.family.name.clone(),
        field: job.kind.to_string(),
        d: job.d,
        h: job.h,
        count,
        bound,
        ratio,
        regime_ok,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn dispatch(job: &Job) -> Result<ReportRow> {
    match job.kind {
        FieldKind::Rationals => run_job(&RationalField::new(), job),
        FieldKind::FunctionField(q) => run_job(&FunctionField::new(q)?, job),
    }
}

fn env_u64(name: &str) -> Result<Option<u64>> {
    match std::env::var(name) {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| Error::Config(format!("{name}={v:?} is not an integer"))),
        Err(_) => Ok(None),
    }
}

/// Runs every (family, field, degree, height) row. `RATGROWTH_SEED`
/// overrides the configured seed and `RATGROWTH_THREADS` caps the workers.
pub fn run_experiment(config: &ExperimentConfig) -> Result<(ExperimentReport, RunInfo)> {
    let start = Instant::now();
    let mut cfg = config.clone();
    if let Some(seed) = env_u64("RATGROWTH_SEED")? {
        cfg.seed = seed;
    }
    let threads = match env_u64("RATGROWTH_THREADS")? {
        Some(0) | None => rayon::current_num_threads(),
        Some(n) => n as usize,
    };
    let mut jobs = Vec::new();
    for fam in &cfg.families {
        let spec = fam.spec();
        for entry in &cfg.fields {
            let (kind, heights) = entry.parts(&cfg.heights)?;
            let ds = if fam.params.d.is_empty() {
                if spec.depends_on_d() {
                    return Err(Error::Config(format!("family {} needs params.d", fam.name)));
                }
                vec![spec.member(&RationalField::new(), 1)?.degree()]
            } else {
                fam.params.d.clone()
            };
            for &d in &ds {
                for &h in heights {
                    jobs.push(Job { family: spec.clone(), kind, d, h, cfg: &cfg });
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let rows = pool.install(|| jobs.par_iter().map(dispatch).collect::<Result<Vec<_>>>())?;
    let info = RunInfo { seed: cfg.seed, threads, elapsed_ms: start.elapsed().as_millis() as u64 };
    Ok((ExperimentReport::from_rows(rows), info))
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("experiment config: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enum_curve_points_oracle, enum_proj_points_oracle};

    fn cfg(text: &str) -> ExperimentConfig {
        parse_config(text).unwrap()
    }

    #[test]
    fn conic_sweep() {
        let c = cfg(r#"{"families":[{"name":"conic"}],"fields":["Q"],"heights":[4,8,16,32]}"#);
        let (rep, _) = run_experiment(&c).unwrap();
        assert_eq!(rep.rows.len(), 4);
        let q = RationalField::new();
        let f = FamilySpec::conic().member(&q, 2).unwrap();
        for r in &rep.rows {
            assert_eq!(r.count, Count::Exact(enum_curve_points_oracle(&q, &f, r.h).len() as u64));
            assert_eq!(r.d, 2);
            assert!(r.bound.unwrap() > 0.0);
        }
        assert_eq!(rep.rows[0].count, Count::Exact(8));
        assert_eq!(rep.fits.len(), 1);
    }

    #[test]
    fn function_field_line() {
        let c = cfg(r#"{"families":[{"name":"p1"}],"fields":[{"field":"Fq(t):q=2","heights":[2,4,8,16]}]}"#);
        let (rep, _) = run_experiment(&c).unwrap();
        let k = FunctionField::new(2).unwrap();
        let counts: Vec<_> = rep.rows.iter().map(|r| r.count.exact().unwrap()).collect();
        let oracle: Vec<_> = (1..=4).map(|m| enum_proj_points_oracle(&k, 1, 1 << m).len() as u64).collect();
        assert_eq!(counts, oracle);
        assert_eq!(rep.rows[0].bound, None);
    }

    #[test]
    fn empty_and_budget() {
        let (rep, _) = run_experiment(&cfg(r#"{"families":[],"heights":[10]}"#)).unwrap();
        assert!(rep.rows.is_empty() && rep.fits.is_empty());
        assert_eq!(ExperimentReport::from_csv(&rep.to_csv().unwrap()).unwrap(), rep);
        let c = cfg(r#"{"families":[{"name":"conic"}],"heights":[4,1000],"budget":500}"#);
        let (rep, _) = run_experiment(&c).unwrap();
        assert_eq!(rep.rows.len(), 2);
        assert_eq!(rep.rows[1].count, Count::BudgetExceeded);
        assert_eq!(rep.rows[1].ratio, None);
    }

    #[test]
    fn csv_round_trip() {
        let c = cfg(
            r#"{"families":[{"name":"cusp","params":{"d":[3,4]}},{"name":"tw","template":"x0^{d} + x1^{d-1}*x2"}],
                "fields":["Q"],"heights":[10,100,1000,5000],"bounds":{"c":2.5,"kappa":3},"budget":100000}"#,
        );
        let err = run_experiment(&c).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        let mut c = c;
        c.families[1].params.d = vec![3];
        let (rep, _) = run_experiment(&c).unwrap();
        assert_eq!(rep.rows.len(), 12);
        let text = rep.to_csv().unwrap();
        assert!(text.starts_with("family,field,d,H,count,bound,ratio,regime_ok,elapsed_ms\n"));
        assert_eq!(ExperimentReport::from_csv(&text).unwrap(), rep);
    }
}
