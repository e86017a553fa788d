//! Batch classification of directions with slopes of bounded coefficient height.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansion::{certify, classify, DirectionK, OrbitResult, DEFAULT_MAX_STEPS};
use crate::field::{Field, FieldElement};
use crate::model::StaircaseModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct SurveyConfig {
    pub n: u32,
    pub height: u32,
    pub max_steps: usize,
}

impl SurveyConfig {
    pub fn new(n: u32, height: u32) -> Self {
        SurveyConfig {
            n,
            height,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.height < 1 {
            return Err(Error::InvalidArgument("height must be at least 1".into()));
        }
        if self.max_steps < 1 {
            return Err(Error::InvalidArgument("max_steps must be at least 1".into()));
        }
        Ok(())
    }
}

/// Distinct rationals p/q with |p| ≤ h and 1 ≤ q ≤ h, ascending.
pub fn height_rationals(h: u32) -> Vec<BigRational> {
    let h = h as i64;
    let mut set = BTreeSet::new();
    for q in 1..=h {
        for p in -h..=h {
            set.insert(BigRational::new(BigInt::from(p), BigInt::from(q)));
        }
    }
    set.into_iter().collect()
}

/// (1, 0), then (1, y) for every y > 0 with coefficients from
/// `height_rationals(h)` in lexicographic order of (c_0, ..., c_{d-1}),
/// then (0, 1).
pub fn enumerate_directions(ctx: &Field, h: u32) -> Vec<DirectionK> {
    let values = height_rationals(h);
    let d = ctx.degree();
    let total = values.len().pow(d as u32);
    let candidates: Vec<Option<DirectionK>> = (0..total)
        .into_par_iter()
        .map(|mut idx| {
            let mut coeffs = vec![BigRational::from_integer(BigInt::from(0)); d];
            for k in (0..d).rev() {
                coeffs[k] = values[idx % values.len()].clone();
                idx /= values.len();
            }
            let y = FieldElement::from_coeffs(ctx, coeffs);
            y.is_positive()
                .then(|| DirectionK::new(&FieldElement::one(ctx), &y).expect("nonzero"))
        })
        .collect();
    let mut out = vec![DirectionK::horizontal(ctx)];
    out.extend(candidates.into_iter().flatten());
    out.push(DirectionK::new(&FieldElement::zero(ctx), &FieldElement::one(ctx)).expect("nonzero"));
    out
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SurveyRecord {
    #[serde(rename = "N")]
    pub n: u32,
    pub x: String,
    pub y: String,
    pub class: String,
    pub steps: usize,
    pub preperiod: String,
    pub period: String,
    pub stabilizer_trace: String,
    pub word: String,
    pub terminal: String,
}

fn join(w: &[usize]) -> String {
    w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

impl SurveyRecord {
    pub fn new(v: &DirectionK, r: &OrbitResult) -> Self {
        let mut rec = SurveyRecord {
            n: v.field().n(),
            x: v.x().to_string(),
            y: v.y().to_string(),
            class: r.class_name().to_string(),
            steps: r.steps(),
            preperiod: String::new(),
            period: String::new(),
            stabilizer_trace: String::new(),
            word: String::new(),
            terminal: String::new(),
        };
        match r {
            OrbitResult::Parabolic { word, terminal, .. } => {
                rec.word = join(word);
                rec.terminal = terminal.name().to_string();
            }
            OrbitResult::Hyperbolic {
                preperiod,
                period,
                stabilizer,
                ..
            } => {
                rec.preperiod = join(preperiod);
                rec.period = join(period);
                rec.stabilizer_trace = stabilizer.trace().to_string();
            }
            OrbitResult::Unresolved { .. } => {}
        }
        rec
    }
}

#[derive(Debug, Clone, Default, Serialize, PartialEq, Eq)]
pub struct SurveyStats {
    pub total: usize,
    pub parabolic: usize,
    pub parabolic_vertical: usize,
    pub hyperbolic: usize,
    pub unresolved: usize,
    pub max_steps_seen: usize,
    /// Distinct stabilizer traces of hyperbolic records, in first-seen order.
    pub hyperbolic_traces: Vec<String>,
    /// Records whose certificate did not replay.
    pub certificate_failures: usize,
}

#[derive(Debug, Clone)]
pub struct SurveyOutcome {
    pub config: SurveyConfig,
    pub directions: Vec<DirectionK>,
    pub results: Vec<OrbitResult>,
    pub records: Vec<SurveyRecord>,
    pub stats: SurveyStats,
}

impl SurveyOutcome {
    /// Directions classified hyperbolic, in enumeration order.
    pub fn hyperbolic_directions(&self) -> Vec<DirectionK> {
        self.directions
            .iter()
            .zip(&self.results)
            .filter(|(_, r)| r.is_hyperbolic())
            .map(|(d, _)| d.clone())
            .collect()
    }

    pub fn parabolic(&self) -> Vec<(DirectionK, OrbitResult)> {
        self.directions
            .iter()
            .zip(&self.results)
            .filter(|(_, r)| r.is_parabolic())
            .map(|(d, r)| (d.clone(), r.clone()))
            .collect()
    }
}

pub fn run_survey(config: &SurveyConfig) -> Result<SurveyOutcome> {
    config.validate()?;
    let ctx = crate::field::make_field(config.n)?;
    let model = StaircaseModel::new(&ctx);
    let directions = enumerate_directions(&ctx, config.height);
    let classified: Vec<(OrbitResult, bool)> = directions
        .par_iter()
        .map(|v| {
            let r = classify(v, &model, config.max_steps);
            let ok = certify(v, &r, &model).unwrap_or(false);
            (r, ok)
        })
        .collect();
    let mut stats = SurveyStats {
        total: directions.len(),
        ..Default::default()
    };
    let mut results = Vec::with_capacity(classified.len());
    let mut records = Vec::with_capacity(classified.len());
    for (v, (r, ok)) in directions.iter().zip(classified) {
        match &r {
            OrbitResult::Parabolic { terminal, .. } => {
                stats.parabolic += 1;
                if *terminal == crate::expansion::Terminal::Vertical {
                    stats.parabolic_vertical += 1;
                }
            }
            OrbitResult::Hyperbolic { stabilizer, .. } => {
                stats.hyperbolic += 1;
                let t = stabilizer.trace().to_string();
                if !stats.hyperbolic_traces.contains(&t) {
                    stats.hyperbolic_traces.push(t);
                }
            }
            OrbitResult::Unresolved { .. } => stats.unresolved += 1,
        }
        stats.max_steps_seen = stats.max_steps_seen.max(r.steps());
        if !ok {
            stats.certificate_failures += 1;
        }
        records.push(SurveyRecord::new(v, &r));
        results.push(r);
    }
    Ok(SurveyOutcome {
        config: config.clone(),
        directions,
        results,
        records,
        stats,
    })
}

pub fn write_csv<W: Write>(records: &[SurveyRecord], out: W) -> Result<()> {
    let io = |e: csv::Error| Error::Io {
        path: "<csv>".into(),
        msg: e.to_string(),
    };
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io {
        path: "<csv>".into(),
        msg: e.to_string(),
    })
}

pub fn survey_json(outcome: &SurveyOutcome) -> serde_json::Value {
    serde_json::json!({
        "N": outcome.config.n,
        "height": outcome.config.height,
        "max_steps": outcome.config.max_steps,
        "stats": outcome.stats,
        "records": outcome.records,
    })
}

/// Writes records to `path` in the given format.
pub fn write_survey(outcome: &SurveyOutcome, path: &Path, format: OutputFormat) -> Result<()> {
    let io = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    };
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(io)?;
    }
    let file = std::fs::File::create(path).map_err(io)?;
    let mut buf = std::io::BufWriter::new(file);
    match format {
        OutputFormat::Csv => write_csv(&outcome.records, &mut buf).map_err(|e| match e {
            Error::Io { msg, .. } => Error::Io {
                path: path.display().to_string(),
                msg,
            },
            other => other,
        })?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut buf, &survey_json(outcome)).map_err(|e| {
                Error::Io {
                    path: path.display().to_string(),
                    msg: e.to_string(),
                }
            })?;
            buf.write_all(b"\n").map_err(io)?;
        }
    }
    buf.flush().map_err(io)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn rationals_of_height() {
        assert_eq!(height_rationals(1).len(), 3);
        // 0, ±1/2, ±1, ±2
        assert_eq!(height_rationals(2).len(), 7);
    }

    #[test]
    fn heptagon_height_one() {
        let k = make_field(7).unwrap();
        let d = enumerate_directions(&k, 1);
        assert_eq!(d.len(), 15);
        assert!(d[0].is_horizontal());
        assert!(d.last().unwrap().is_vertical());
        assert!(d[1..14].iter().all(|v| v.y().is_positive()));
        let set: std::collections::HashSet<_> = d.iter().collect();
        assert_eq!(set.len(), 15);
    }

    #[test]
    fn pentagon_is_parabolic() {
        let out = run_survey(&SurveyConfig::new(5, 2)).unwrap();
        assert_eq!(out.stats.parabolic, out.stats.total);
        assert_eq!(out.stats.certificate_failures, 0);
    }

    #[test]
    fn deterministic_csv() {
        let cfg = SurveyConfig::new(7, 1).with_max_steps(200);
        let a = run_survey(&cfg).unwrap();
        let b = run_survey(&cfg).unwrap();
        let (mut x, mut y) = (Vec::new(), Vec::new());
        write_csv(&a.records, &mut x).unwrap();
        write_csv(&b.records, &mut y).unwrap();
        assert_eq!(x, y);
        let text = String::from_utf8(x).unwrap();
        assert!(text.starts_with(
            "N,x,y,class,steps,preperiod,period,stabilizer_trace,word,terminal\n7,1,0,parabolic,0"
        ));
    }

    #[test]
    fn rejects_bad_config() {
        assert!(run_survey(&SurveyConfig::new(7, 0)).is_err());
        assert!(run_survey(&SurveyConfig::new(7, 1).with_max_steps(0)).is_err());
        assert!(run_survey(&SurveyConfig::new(8, 1)).is_err());
    }
}
