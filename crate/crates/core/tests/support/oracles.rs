//! Brute-force and closed-form oracles shared by the property tests and the
//! acceptance gate. Each check returns `Err` with the first counterexample.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use desitter_core::{
    apply_generator, apply_word, classify_discriminant, classify_parabolic, cycle_of,
    domain_word_of_form, enumerate_classes, enumerate_h0, lift_sl2, pythagorean_of_rational,
    rational_of_pythagorean, rational_of_word, word_of_rational, ClassList, Form, Fraction,
    Generator, GeneratorWord, Involution, OrbitClass, Region,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_form(rng: &mut StdRng, bound: i64) -> Form {
    Form::new(
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
        rng.gen_range(-bound..=bound),
    )
}

pub fn random_word(rng: &mut StdRng, max_len: usize) -> GeneratorWord {
    let len = rng.gen_range(0..=max_len);
    GeneratorWord::from_letters(
        (0..len)
            .map(|_| Generator::ALL[rng.gen_range(0..Generator::ALL.len())])
            .collect(),
    )
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn inv(f: Form, i: Involution) -> Form {
    f.apply_involution(i).unwrap()
}

fn gen(f: Form, g: Generator) -> Form {
    apply_generator(f, g).unwrap()
}

/// The involution identities relating `A`, `B` and their inverses.
pub fn involution_identities(samples: usize, seed: u64) -> Check {
    use Generator::*;
    use Involution::*;
    let mut r = rng(seed);
    for _ in 0..samples {
        let f = random_form(&mut r, 1 << 30);
        let cases = [
            (inv(gen(f, A), Adjoint), gen(inv(f, Adjoint), Bbar)),
            (inv(gen(f, B), Adjoint), gen(inv(f, Adjoint), Abar)),
            (inv(gen(f, A), Conjugate), gen(inv(f, Conjugate), Abar)),
            (inv(gen(f, B), Conjugate), gen(inv(f, Conjugate), Bbar)),
            (inv(gen(f, A), Antipodal), gen(inv(f, Antipodal), B)),
            (inv(gen(f, B), Antipodal), gen(inv(f, Antipodal), A)),
        ];
        for (i, (lhs, rhs)) in cases.iter().enumerate() {
            ensure(lhs == rhs, || {
                format!("identity {i} fails at {f}: {lhs} != {rhs}")
            })?;
        }
    }
    Ok(())
}

pub fn discriminant_invariance(samples: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    for _ in 0..samples {
        let f = random_form(&mut r, 1 << 20);
        let w = random_word(&mut r, 8);
        let g = apply_word(f, &w).map_err(|e| e.to_string())?;
        ensure(g.discriminant() == f.discriminant(), || {
            format!("{w} changes the discriminant of {f}")
        })?;
    }
    Ok(())
}

pub fn necklace_invariants(samples: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    for _ in 0..samples {
        let f = random_form(&mut r, 1 << 30);
        let p = f.to_kds().unwrap();
        let a = gen(f, Generator::A).to_kds().unwrap();
        let b = gen(f, Generator::B).to_kds().unwrap();
        ensure(a.s + a.d == p.s + p.d && a.s + a.d == 2 * f.m, || {
            format!("S+D moves under A at {f}")
        })?;
        ensure(b.s - b.d == p.s - p.d && b.s - b.d == 2 * f.n, || {
            format!("S-D moves under B at {f}")
        })?;
    }
    Ok(())
}

fn in_h0(f: Form) -> bool {
    f.m > 0 && f.n < 0
}

pub fn admissible(delta: i64) -> bool {
    matches!(delta.rem_euclid(4), 0 | 1)
}

/// Cycles through every point of `H0` partition it; at each step exactly
/// one of `A f`, `B f` stays in `H0`.
pub fn cycle_partition(max_delta: i64) -> Check {
    for delta in 1..=max_delta {
        let d = classify_discriminant(delta);
        if !admissible(delta) || d.square_root().is_some() {
            continue;
        }
        let h0 = enumerate_h0(d, false).map_err(|e| e.to_string())?;
        let all: BTreeSet<Form> = h0.iter().copied().collect();
        ensure(all.len() == h0.len(), || {
            format!("duplicate H0 points for {delta}")
        })?;
        let mut covered = BTreeSet::new();
        let mut cycles = 0;
        for &f in &h0 {
            let (a, b) = (gen(f, Generator::A), gen(f, Generator::B));
            ensure(in_h0(a) != in_h0(b), || {
                format!("step at {f} is not unique")
            })?;
            if covered.contains(&f) {
                continue;
            }
            let c = cycle_of(f).map_err(|e| e.to_string())?;
            cycles += 1;
            for (i, p) in c.points.iter().enumerate() {
                let next = c.points[(i + 1) % c.len()];
                ensure(gen(*p, c.steps.letters()[i]) == next, || {
                    format!("broken cycle at {p}")
                })?;
                ensure(covered.insert(*p), || {
                    format!("{p} lies on two cycles for {delta}")
                })?;
            }
            ensure(c.t_a + c.t_b == c.len(), || format!("letter counts of {f}"))?;
        }
        ensure(covered == all, || {
            format!("cycles miss points of H0 for {delta}")
        })?;
        let classes = enumerate_classes(d).map_err(|e| e.to_string())?;
        ensure(classes.classes().len() == cycles, || {
            format!("class count for {delta}")
        })?;
    }
    Ok(())
}

/// All points of the orbit through `starts` with coefficients bounded by `bound`.
pub fn bfs_orbit(starts: &[Form], bound: i64) -> BTreeSet<Form> {
    let fits = |f: &Form| f.m.abs().max(f.n.abs()).max(f.k.abs()) <= bound;
    let mut seen: BTreeSet<Form> = starts.iter().copied().filter(fits).collect();
    let mut queue: VecDeque<Form> = seen.iter().copied().collect();
    while let Some(f) = queue.pop_front() {
        for g in Generator::ALL {
            let h = gen(f, g);
            if fits(&h) && seen.insert(h) {
                queue.push_back(h);
            }
        }
    }
    seen
}

fn positive_words(max_len: usize) -> Vec<GeneratorWord> {
    let mut out = vec![GeneratorWord::empty()];
    let mut layer = vec![GeneratorWord::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in [Generator::A, Generator::B] {
                let mut v = w.clone();
                v.push(g);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Depth to which a box of half-width `bound` holds complete domains:
/// each positive letter at most triples the largest coefficient, starting
/// from `H0`, where coefficients are at most `max(Delta/4, sqrt(Delta))`.
pub fn complete_depth(delta: i64, bound: i64) -> Option<usize> {
    let m0 = (delta / 4).max((delta as f64).sqrt().ceil() as i64).max(1);
    let mut reach = 3 * m0;
    let mut depth = None;
    while reach <= bound {
        depth = Some(depth.map_or(0, |d| d + 1));
        reach *= 3;
    }
    depth
}

/// Interior points per domain of the orbit of one class, from a bounded BFS.
pub fn domain_counts(
    class: &OrbitClass,
    bound: i64,
    depth: usize,
) -> BTreeMap<(Region, GeneratorWord), usize> {
    let mut counts = BTreeMap::new();
    for f in bfs_orbit(&class.closure_points(), bound) {
        if f.m == 0 || f.n == 0 || f.m.signum() != f.n.signum() {
            continue;
        }
        let dw = domain_word_of_form(f).unwrap();
        if dw.frontier || dw.word.len() > depth {
            continue;
        }
        *counts.entry((dw.region, dw.word)).or_insert(0) += 1;
    }
    counts
}

/// Every upper domain holds `t_B` points of the class and every lower
/// domain `t_A`, checked for all domains of generation up to the complete
/// depth of the default box `16 (Delta + 1)`.
pub fn count_law(max_delta: i64) -> Check {
    for delta in 1..=max_delta {
        if !admissible(delta) {
            continue;
        }
        count_law_at(delta, 16 * (delta + 1))?;
    }
    Ok(())
}

pub fn count_law_at(delta: i64, bound: i64) -> Check {
    let d = classify_discriminant(delta);
    let depth = complete_depth(delta, bound).ok_or_else(|| format!("box too small for {delta}"))?;
    let words = positive_words(depth);
    let ClassList::Finite(classes) = enumerate_classes(d).map_err(|e| e.to_string())? else {
        return Err(format!("no finite class list for {delta}"));
    };
    for class in &classes {
        let counts = domain_counts(class, bound, depth);
        let (t_a, t_b) = class.t_ab();
        for region in Region::ALL {
            let expected = if region.is_upper() { t_b } else { t_a };
            for w in &words {
                let got = counts.get(&(region, w.clone())).copied().unwrap_or(0);
                ensure(got == expected, || {
                    format!(
                        "Delta={delta} class {}: {region}:{w} holds {got} points, expected {expected}",
                        class.representative
                    )
                })?;
            }
        }
    }
    Ok(())
}

/// Every positive word up to `depth` letters survives word -> fraction -> word.
pub fn farey_round_trip(depth: usize) -> Check {
    for w in positive_words(depth) {
        let x = rational_of_word(&w).map_err(|e| e.to_string())?;
        let back = word_of_rational(x).map_err(|e| e.to_string())?;
        ensure(back == w, || format!("{w} -> {x} -> {back}"))?;
        ensure(x.generation() == w.len() + 1, || {
            format!("generation of {x}")
        })?;
    }
    Ok(())
}

/// Stern-Brocot oracle: each node carries its bracketing neighbours
/// `(left, x, right)`; appending `A` moves to `(x, x + right, right)` and
/// appending `B` to `(left, left + x, x)`, where `+` is the mediant.
pub fn farey_mediant_consistency(depth: usize) -> Check {
    type Node = ((i64, i64), (i64, i64), (i64, i64));
    let med = |a: (i64, i64), b: (i64, i64)| (a.0 + b.0, a.1 + b.1);
    let mut layer: Vec<(GeneratorWord, Node)> =
        vec![(GeneratorWord::empty(), ((0, 1), (1, 1), (1, 0)))];
    for generation in 1..=depth {
        let mut values = Vec::new();
        for (w, (_, x, _)) in &layer {
            let got = rational_of_word(w).map_err(|e| e.to_string())?;
            ensure((got.p(), got.q()) == *x, || {
                format!("{w}: mediant gives {x:?}, word gives {got}")
            })?;
            values.push((w.clone(), got));
        }
        // left-to-right order: B-subtrees sit to the left of A-subtrees
        values.sort_by(|a, b| {
            let key = |w: &GeneratorWord| -> Vec<u8> {
                w.letters()
                    .iter()
                    .map(|g| u8::from(*g == Generator::A))
                    .collect()
            };
            key(&a.0).cmp(&key(&b.0))
        });
        for pair in values.windows(2) {
            let (x, y) = (pair[0].1, pair[1].1);
            ensure(
                (x.p() as i128) * (y.q() as i128) < (y.p() as i128) * (x.q() as i128),
                || format!("generation {generation}: {x} is not left of {y}"),
            )?;
        }
        let mut next = Vec::with_capacity(layer.len() * 2);
        for (w, (l, x, r)) in layer {
            let mut wa = w.clone();
            wa.push(Generator::A);
            next.push((wa, (x, med(x, r), r)));
            let mut wb = w;
            wb.push(Generator::B);
            next.push((wb, (l, med(l, x), x)));
        }
        layer = next;
    }
    Ok(())
}

/// Fractions with `p, q <= max` and their reduced triples correspond
/// one-to-one.
pub fn pythagorean_bijection(max: i64) -> Check {
    let mut seen = BTreeSet::new();
    for p in 0..=max {
        for q in 0..=max {
            if num_gcd(p, q) != 1 {
                continue;
            }
            let x = Fraction::new(p, q).map_err(|e| e.to_string())?;
            let t = pythagorean_of_rational(x).map_err(|e| e.to_string())?;
            ensure(t.k * t.k + t.d * t.d == t.s * t.s, || {
                format!("{t} is off the cone")
            })?;
            ensure(t.is_good(), || format!("{t} is not a good point"))?;
            let simple = t.simple();
            ensure(seen.insert((simple.k, simple.d, simple.s)), || {
                format!("{simple} hit twice")
            })?;
            let back = rational_of_pythagorean(simple).map_err(|e| e.to_string())?;
            ensure(back == x, || format!("{x} -> {simple} -> {back}"))?;
        }
    }
    Ok(())
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

/// Random `a (alpha x + beta y)^2` moved by a random word; the returned
/// matrix must send it to `a x^2`.
pub fn parabolic_replay(samples: usize, seed: u64) -> Check {
    let mut r = rng(seed);
    let mut done = 0;
    while done < samples {
        let alpha: i64 = r.gen_range(-60..=60);
        let beta: i64 = r.gen_range(-60..=60);
        if num_gcd(alpha, beta) != 1 {
            continue;
        }
        let a: i64 = loop {
            let a = r.gen_range(-40..=40);
            if a != 0 {
                break a;
            }
        };
        let base = Form::new(a * alpha * alpha, a * beta * beta, 2 * a * alpha * beta);
        let f = apply_word(base, &random_word(&mut r, 4)).map_err(|e| e.to_string())?;
        let (got_a, l) = classify_parabolic(f).map_err(|e| e.to_string())?;
        ensure(got_a == a, || format!("{f}: content {got_a}, expected {a}"))?;
        let image = lift_sl2(l)
            .and_then(|t| t.apply(f))
            .map_err(|e| e.to_string())?;
        ensure(image == Form::new(a, 0, 0), || {
            format!("{f}: {l} gives {image}")
        })?;
        done += 1;
    }
    Ok(())
}
