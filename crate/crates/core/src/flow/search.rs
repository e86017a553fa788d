//! Search for a hyperbolic-direction separatrix through a given point.
//!
//! A hyperbolic direction is not parabolic, so it carries no saddle
//! connection. A separatrix in such a direction through a point therefore
//! never closes up into a saddle connection, and the point is not a
//! connection point.

use std::collections::HashSet;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::Result;
use crate::expansion::{certify, classify, matrix_json, orbit_json, DirectionK, OrbitResult, DEFAULT_MAX_STEPS};
use crate::field::{ExtContext, ExtElement};
use crate::model::{HeptagonModel, StaircaseModel, TransitionMaps, VecK, VecL};
use crate::survey::{run_survey, SurveyConfig};

use super::{central_points, separatrix_through, vec_json, Orientation, SurfacePoint, TraceOutcome, DEFAULT_MAX_CROSSINGS};

/// Longest word w used for images M_w·p of periodic directions.
pub const DEFAULT_DEPTH: usize = 6;


#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub depth: usize,
    pub max_crossings: usize,
    /// Coefficient height of the survey that seeds the candidates.
    pub survey_height: u32,
    pub max_steps: usize,
    /// Stop after this many candidates even if the stream continues.
    pub max_candidates: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth: DEFAULT_DEPTH,
            max_crossings: DEFAULT_MAX_CROSSINGS,
            survey_height: 1,
            max_steps: DEFAULT_MAX_STEPS,
            max_candidates: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CandidateSource {
    /// The i-th hyperbolic direction of the seeding survey.
    Survey(usize),
    /// M_w applied to the seed-th periodic direction.
    Image { seed: usize, word: Vec<usize> },
}

impl CandidateSource {
    pub fn describe(&self) -> String {
        match self {
            CandidateSource::Survey(i) => format!("survey hyperbolic #{i}"),
            CandidateSource::Image { seed, word } => format!("M_{word:?} applied to periodic direction #{seed}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Candidate {
    pub index: usize,
    /// The staircase vector itself, in the closed first quadrant.
    pub vector: VecK,
    pub direction: DirectionK,
    pub source: CandidateSource,
}

/// Survey hyperbolics, then M_w·p for every periodic direction p and every
/// word w of length 1..=depth (shorter words first, lexicographic within a
/// length), skipping directions already produced.
pub fn candidate_stream<'a>(
    model: &'a StaircaseModel,
    hyperbolics: Vec<DirectionK>,
    periodic: Vec<DirectionK>,
    depth: usize,
) -> impl Iterator<Item = Candidate> + 'a {
    let letters = model.sector_count();
    let first = hyperbolics
        .into_iter()
        .enumerate()
        .map(|(i, d)| (d.to_vec(), CandidateSource::Survey(i)));
    let images = (1..=depth).flat_map(move |len| {
        let periodic = periodic.clone();
        (0..letters.pow(len as u32)).flat_map(move |mut code| {
            let mut word = vec![0; len];
            for slot in word.iter_mut().rev() {
                *slot = code % letters;
                code /= letters;
            }
            let m = crate::expansion::word_matrix(&word, model).expect("letters index sectors");
            periodic
                .iter()
                .enumerate()
                .map(|(seed, p)| {
                    (
                        m.apply(&p.to_vec()),
                        CandidateSource::Image {
                            seed,
                            word: word.clone(),
                        },
                    )
                })
                .collect::<Vec<_>>()
        })
    });
    let mut seen = HashSet::new();
    first
        .chain(images)
        .filter_map(move |(vector, source)| {
            let direction = DirectionK::from_vec(&vector).ok()?;
            // sector matrices keep the first quadrant, so nothing is rotated
            debug_assert!(!direction.was_rotated());
            seen.insert(direction.clone()).then_some((vector, direction, source))
        })
        .enumerate()
        .map(|(index, (vector, direction, source))| Candidate {
            index,
            vector,
            direction,
            source,
        })
}

/// Evidence that a point lies on a separatrix with a hyperbolic direction.
#[derive(Debug, Clone)]
pub struct SeparatrixReport {
    pub point_label: String,
    pub point: SurfacePoint<ExtElement>,
    pub candidate: Candidate,
    pub heptagon_direction: VecL,
    pub classification: OrbitResult,
    pub orientation: Orientation,
    /// The ray from the point that met the singularity.
    pub trace: TraceOutcome<ExtElement>,
    pub verdict: bool,
}

impl SeparatrixReport {
    pub fn to_json(&self) -> Value {
        let d = &self.candidate.direction;
        let mut v = json!({
            "point": self.point_label,
            "coordinates": self.point.to_json(),
            "candidate_index": self.candidate.index,
            "candidate_source": self.candidate.source.describe(),
            "staircase_vector": [self.candidate.vector.x.to_string(), self.candidate.vector.y.to_string()],
            "heptagon_direction": vec_json(&self.heptagon_direction),
            "separatrix_orientation": self.orientation.sign(),
            "classification": orbit_json(&d.x(), &d.y(), &self.classification),
            "hit": self.trace.to_json(),
            "verdict": self.verdict,
        });
        if let OrbitResult::Hyperbolic { input_stabilizer, .. } = &self.classification {
            v.as_object_mut()
                .expect("object")
                .insert("stabilizer".into(), matrix_json(input_stabilizer));
        }
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    Certified,
    Exhausted,
    /// No candidates at all.
    Empty,
}

impl SearchStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SearchStatus::Certified => "certified",
            SearchStatus::Exhausted => "exhausted",
            SearchStatus::Empty => "empty",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CandidateLog {
    pub index: usize,
    pub source: String,
    pub direction: [String; 2],
    pub class: &'static str,
    pub minus: String,
    pub plus: String,
    pub certified: bool,
}

impl CandidateLog {
    pub fn to_json(&self) -> Value {
        json!({
            "index": self.index,
            "source": self.source,
            "direction": self.direction,
            "class": self.class,
            "minus_ray": self.minus,
            "plus_ray": self.plus,
            "certified": self.certified,
        })
    }
}

#[derive(Debug, Clone)]
pub struct PointSearch {
    pub label: String,
    pub point: SurfacePoint<ExtElement>,
    pub status: SearchStatus,
    pub report: Option<SeparatrixReport>,
    pub examined: usize,
    pub transcript: Vec<CandidateLog>,
}

impl PointSearch {
    pub fn to_json(&self) -> Value {
        json!({
            "point": self.label,
            "coordinates": self.point.to_json(),
            "status": self.status.name(),
            "examined": self.examined,
            "report": self.report.as_ref().map(SeparatrixReport::to_json),
            "transcript": self.transcript.iter().map(CandidateLog::to_json).collect::<Vec<_>>(),
        })
    }
}

/// What examining one candidate at one point produced.
struct Examined {
    log: CandidateLog,
    report: Option<SeparatrixReport>,
}

fn ray_summary(t: &TraceOutcome<ExtElement>) -> String {
    match t.squared_length() {
        Some(l) => format!("hit vertex after {} crossings, squared length ≈ {:.6}", t.crossings, crate::linalg::Scalar::approx_f64(l)),
        None => format!("no vertex within {} crossings", t.crossings),
    }
}

struct Context<'a> {
    staircase: &'a StaircaseModel,
    hept: &'a HeptagonModel,
    maps: &'a TransitionMaps,
    cfg: &'a SearchConfig,
}

fn examine(ctx: &Context, label: &str, point: &SurfacePoint<ExtElement>, c: &Candidate) -> Result<Examined> {
    let classification = classify(&c.direction, ctx.staircase, ctx.cfg.max_steps);
    let mut log = CandidateLog {
        index: c.index,
        source: c.source.describe(),
        direction: [c.direction.x().to_string(), c.direction.y().to_string()],
        class: classification.class_name(),
        minus: String::new(),
        plus: String::new(),
        certified: false,
    };
    if !classification.is_hyperbolic() || !certify(&c.direction, &classification, ctx.staircase)? {
        log.minus = "skipped: not certified hyperbolic".into();
        return Ok(Examined { log, report: None });
    }
    let dir = ctx.maps.dir_to_heptagon(&c.vector);
    let check = separatrix_through(ctx.hept.surface(), point, &dir, ctx.cfg.max_crossings)?;
    log.minus = ray_summary(&check.minus);
    log.plus = ray_summary(&check.plus);
    let report = match (check.orientation, check.hit()) {
        (Some(orientation), Some(trace)) => Some(SeparatrixReport {
            point_label: label.to_string(),
            point: point.clone(),
            candidate: c.clone(),
            heptagon_direction: dir,
            classification,
            orientation,
            trace: trace.clone(),
            verdict: true,
        }),
        _ => None,
    };
    log.certified = report.is_some();
    Ok(Examined { log, report })
}

fn run_points(
    ctx: &Context,
    points: &[(String, SurfacePoint<ExtElement>)],
    candidates: impl Iterator<Item = Candidate>,
) -> Result<Vec<PointSearch>> {
    let mut out: Vec<PointSearch> = points
        .iter()
        .map(|(label, p)| PointSearch {
            label: label.clone(),
            point: p.clone(),
            status: SearchStatus::Empty,
            report: None,
            examined: 0,
            transcript: Vec::new(),
        })
        .collect();
    let limit = ctx.cfg.max_candidates.unwrap_or(usize::MAX);
    let mut stream = candidates.take(limit).peekable();
    while stream.peek().is_some() {
        let open: Vec<usize> = (0..out.len()).filter(|&i| out[i].report.is_none()).collect();
        if open.is_empty() {
            break;
        }
        // one round of work per thread; results are still taken in index order
        let per_round = rayon::current_num_threads().div_ceil(open.len()).max(1);
        let chunk: Vec<Candidate> = stream.by_ref().take(per_round).collect();
        let work: Vec<(usize, &Candidate)> = chunk.iter().flat_map(|c| open.iter().map(move |&i| (i, c))).collect();
        let results: Vec<Result<Examined>> = work
            .par_iter()
            .map(|&(i, c)| examine(ctx, &points[i].0, &points[i].1, c))
            .collect();
        // candidate order decides, whatever order the work finished in
        for ((i, _), r) in work.iter().zip(results) {
            let search = &mut out[*i];
            if search.report.is_some() {
                continue;
            }
            let e = r?;
            search.examined += 1;
            search.transcript.push(e.log);
            if e.report.is_some() {
                search.report = e.report;
            }
        }
    }
    for s in &mut out {
        s.status = if s.report.is_some() {
            SearchStatus::Certified
        } else if s.examined == 0 {
            SearchStatus::Empty
        } else {
            SearchStatus::Exhausted
        };
    }
    Ok(out)
}

/// The first candidate (by index) whose direction is certified hyperbolic
/// and whose separatrix passes through `point`.
pub fn search_hyperbolic_separatrix(
    staircase: &StaircaseModel,
    hept: &HeptagonModel,
    label: &str,
    point: &SurfacePoint<ExtElement>,
    candidates: impl Iterator<Item = Candidate>,
    cfg: &SearchConfig,
) -> Result<PointSearch> {
    let maps = TransitionMaps::new(hept.ext())?;
    let ctx = Context {
        staircase,
        hept,
        maps: &maps,
        cfg,
    };
    let points = [(label.to_string(), point.clone())];
    Ok(run_points(&ctx, &points, candidates)?.remove(0))
}

/// Runs the search at both central points of the double heptagon with
/// candidates seeded by a survey of the heptagon staircase.
pub fn central_point_search(cfg: &SearchConfig) -> Result<Vec<PointSearch>> {
    let k = crate::field::make_field(7)?;
    let staircase = StaircaseModel::new(&k);
    let hept = HeptagonModel::new(&ExtContext::new(&k))?;
    let maps = TransitionMaps::new(hept.ext())?;
    let survey = run_survey(&SurveyConfig::new(7, cfg.survey_height).with_max_steps(cfg.max_steps))?;
    let hyperbolics = survey.hyperbolic_directions();
    let mut periodic: Vec<DirectionK> = Vec::new();
    for r in &survey.results {
        if let OrbitResult::Hyperbolic { periodic_direction, .. } = r {
            if !periodic.contains(periodic_direction) {
                periodic.push(periodic_direction.clone());
            }
        }
    }
    let [c1, c2] = central_points(&hept);
    let points = [("c1".to_string(), c1), ("c2".to_string(), c2)];
    let ctx = Context {
        staircase: &staircase,
        hept: &hept,
        maps: &maps,
        cfg,
    };
    run_points(&ctx, &points, candidate_stream(&staircase, hyperbolics, periodic, cfg.depth))
}

/// Re-derives a report from scratch: classification, certificate, mapped
/// direction and the singular hit must all come out the same.
pub fn reverify(report: &SeparatrixReport, staircase: &StaircaseModel, hept: &HeptagonModel, max_steps: usize) -> Result<bool> {
    let maps = TransitionMaps::new(hept.ext())?;
    let c = &report.candidate;
    if DirectionK::from_vec(&c.vector)? != c.direction {
        return Ok(false);
    }
    let classification = classify(&c.direction, staircase, max_steps);
    if classification != report.classification
        || !classification.is_hyperbolic()
        || !certify(&c.direction, &classification, staircase)?
    {
        return Ok(false);
    }
    let dir = maps.dir_to_heptagon(&c.vector);
    if dir != report.heptagon_direction {
        return Ok(false);
    }
    let check = separatrix_through(hept.surface(), &report.point, &dir, report.trace.crossings + 1)?;
    Ok(check.orientation == Some(report.orientation) && check.hit() == Some(&report.trace) && report.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{make_field, FieldElement};

    fn models() -> (StaircaseModel, HeptagonModel) {
        let k = make_field(7).unwrap();
        (StaircaseModel::new(&k), HeptagonModel::new(&ExtContext::new(&k)).unwrap())
    }

    fn two_step(k: &crate::field::Field) -> DirectionK {
        DirectionK::new(&FieldElement::one(k), &FieldElement::from_ints(k, &[-1, 0, 1])).unwrap()
    }

    #[test]
    fn stream_is_deduplicated_and_ordered() {
        let (s, _) = models();
        let p = two_step(s.field());
        let all: Vec<_> = candidate_stream(&s, vec![p.clone()], vec![p.clone()], 2).collect();
        assert_eq!(all[0].direction, p);
        assert_eq!(all[0].source, CandidateSource::Survey(0));
        let set: HashSet<_> = all.iter().map(|c| c.direction.clone()).collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().enumerate().all(|(i, c)| c.index == i));
        // at most 6 + 36 images, minus repeats of earlier directions
        assert!(all.len() <= 43 && all.len() > 30);
    }

    #[test]
    fn center_separatrix_for_the_two_step_direction_family() {
        let (s, h) = models();
        let p = two_step(s.field());
        let cfg = SearchConfig {
            max_crossings: 200,
            max_candidates: Some(40),
            ..Default::default()
        };
        let [c1, _] = central_points(&h);
        let found = search_hyperbolic_separatrix(&s, &h, "c1", &c1, candidate_stream(&s, vec![], vec![p], 2), &cfg).unwrap();
        assert_eq!(found.status, SearchStatus::Certified);
        let r = found.report.unwrap();
        assert!(r.verdict && r.classification.is_hyperbolic() && r.trace.hit_vertex());
        assert!(reverify(&r, &s, &h, DEFAULT_MAX_STEPS).unwrap());
        let json = r.to_json();
        assert_eq!(json["verdict"], true);
        assert!(json["stabilizer"].is_array());
    }

    #[test]
    fn empty_stream() {
        let (s, h) = models();
        let [c1, _] = central_points(&h);
        let r = search_hyperbolic_separatrix(&s, &h, "c1", &c1, std::iter::empty(), &SearchConfig::default()).unwrap();
        assert_eq!(r.status, SearchStatus::Empty);
    }
}
