//! The fast expansion loop against a plain one that hashes canonical slopes.

use std::collections::HashMap;

use veech_core::expansion::{
    classify, expand, gcd_step, locate_sector, word_matrix, DirectionK, Locus, OrbitResult,
};
use veech_core::make_field;
use veech_core::model::StaircaseModel;
use veech_core::survey::enumerate_directions;

/// (class, word up to the end, first index of the period)
fn reference(v: &DirectionK, model: &StaircaseModel, max_steps: usize) -> (&'static str, Vec<usize>, Option<usize>) {
    let mut seen = HashMap::new();
    let mut cur = v.clone();
    let mut word = Vec::new();
    seen.insert(cur.clone(), 0);
    loop {
        if let Locus::Terminal(_) = locate_sector(&cur, model) {
            return ("parabolic", word, None);
        }
        if word.len() >= max_steps {
            return ("unresolved", word, None);
        }
        let (i, next) = gcd_step(&cur, model).unwrap();
        word.push(i);
        if let Some(&s) = seen.get(&next) {
            return ("hyperbolic", word, Some(s));
        }
        seen.insert(next.clone(), word.len());
        cur = next;
    }
}

fn compare(n: u32, h: u32, max_steps: usize) {
    let k = make_field(n).unwrap();
    let model = StaircaseModel::new(&k);
    for v in enumerate_directions(&k, h) {
        let (class, word, start) = reference(&v, &model, max_steps);
        let got = classify(&v, &model, max_steps);
        assert_eq!(got.class_name(), class, "N={n} {v}");
        assert_eq!(got.steps(), word.len(), "N={n} {v}");
        match got {
            OrbitResult::Parabolic { word: w, .. } => assert_eq!(w, word),
            OrbitResult::Hyperbolic {
                preperiod,
                period,
                stabilizer,
                ..
            } => {
                let s = start.unwrap();
                assert_eq!(preperiod, word[..s]);
                assert_eq!(period, word[s..]);
                assert_eq!(stabilizer, word_matrix(&word[s..], &model).unwrap());
            }
            OrbitResult::Unresolved { .. } => {}
        }
    }
}

#[test]
fn heptagon_height_two() {
    compare(7, 2, 400);
}

#[test]
fn pentagon_height_three() {
    compare(5, 3, 400);
}

#[test]
fn enneagon_height_one() {
    compare(9, 1, 300);
}

#[test]
fn hendecagon_short_budget() {
    // exercises the unresolved branch past several canonicalizations
    compare(11, 1, 150);
}

#[test]
fn expansion_lists_every_direction() {
    let k = make_field(7).unwrap();
    let model = StaircaseModel::new(&k);
    for v in enumerate_directions(&k, 1) {
        let e = expand(&v, &model, 300);
        assert_eq!(e.directions.len(), e.sectors.len() + 1);
        assert_eq!(e.directions[0], v);
        for (w, &i) in e.directions.windows(2).zip(&e.sectors) {
            assert_eq!(gcd_step(&w[0], &model).unwrap(), (i, w[1].clone()));
        }
    }
}
