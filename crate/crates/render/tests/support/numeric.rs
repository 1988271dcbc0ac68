//! Numeric checks of the projections, shared with the acceptance suite.

use desitter_core::{
    apply_word, classify_discriminant, enumerate_classes, Form, Generator, GeneratorWord,
};
use desitter_render::{disc_apply_word, eclipse_two_sheet, project_two_sheet, DiscPoint};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn kds(f: Form) -> [f64; 3] {
    [f.k as f64, (f.m - f.n) as f64, (f.m + f.n) as f64]
}

fn random_word(rng: &mut StdRng, max_len: usize) -> GeneratorWord {
    const LETTERS: [Generator; 5] = [
        Generator::A,
        Generator::B,
        Generator::Abar,
        Generator::Bbar,
        Generator::R,
    ];
    let len = rng.gen_range(0..=max_len);
    GeneratorWord::from_letters((0..len).map(|_| LETTERS[rng.gen_range(0..5)]).collect())
}

fn distance(a: DiscPoint, b: DiscPoint) -> f64 {
    (a.k - b.k).hypot(a.d - b.d)
}

/// Largest gap between `P(T_w p)` and `w^(P p)` over random integer points
/// of the positive sheet and random words.
pub fn commutation_deviation(
    deltas: &[i64],
    points: usize,
    max_len: usize,
    seed: u64,
) -> Result<f64, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0f64;
    for &delta in deltas {
        let list = enumerate_classes(classify_discriminant(delta)).map_err(|e| e.to_string())?;
        let reps: Vec<Form> = list.classes().iter().map(|c| c.representative).collect();
        if reps.is_empty() {
            return Err(format!("no classes for {delta}"));
        }
        for _ in 0..points {
            // a random good point: a representative pushed by a short word
            let rep = reps[rng.gen_range(0..reps.len())];
            let p = apply_word(rep, &random_word(&mut rng, 4)).map_err(|e| e.to_string())?;
            let w = random_word(&mut rng, max_len);
            let q = apply_word(p, &w).map_err(|e| e.to_string())?;
            let lhs = project_two_sheet(kds(q), delta as f64).map_err(|e| e.to_string())?;
            let start = project_two_sheet(kds(p), delta as f64).map_err(|e| e.to_string())?;
            let rhs = disc_apply_word(&w, start).map_err(|e| e.to_string())?;
            worst = worst.max(distance(lhs, rhs));
        }
    }
    Ok(worst)
}

/// Largest gap between the eclipse composite and `P` on random points of
/// two-sheet upper sheets.
pub fn eclipse_deviation(samples: usize, seed: u64) -> Result<f64, String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut worst = 0f64;
    for _ in 0..samples {
        let delta = -rng.gen_range(0.5..200.0f64);
        let k = rng.gen_range(-50.0..50.0f64);
        let d = rng.gen_range(-50.0..50.0f64);
        let s = (k * k + d * d - delta).sqrt();
        let a = eclipse_two_sheet([k, d, s], delta).map_err(|e| e.to_string())?;
        let b = project_two_sheet([k, d, s], delta).map_err(|e| e.to_string())?;
        worst = worst.max(distance(a, b));
    }
    Ok(worst)
}
