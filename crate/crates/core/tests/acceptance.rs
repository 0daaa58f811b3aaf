//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use minvar::constructions::{explicit_small, lemma1_combine, s_sum, stci_s2, theorem7_set, EquationSet};
use minvar::groebner::buchberger;
use minvar::ideal::{height, intersect, radical_equal, radical_membership, Ideal};
use minvar::minvar::{
    bounds_oracle, build_ideal_is, build_ideal_j, j_generators, prime_components, BarredMatrix, BarredMatrixSpec,
    Identification,
};
use minvar::poly::{parse_polynomial, Field, Poly, PrimeField, Rationals, TermOrder};
use minvar::verify::{verify_defining_set, Verdict, VerifyOptions};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{naive_nf, naive_reduced_gb, naive_spoly, power_search, random_nonconstant, random_poly, ring3};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn matrix<F: Field>(s: usize, t: usize, field: F) -> BarredMatrix<F> {
    BarredMatrix::new(&BarredMatrixSpec::distinct(s, t).unwrap(), field, TermOrder::DegRevLex)
}

fn fp(s: usize, t: usize) -> BarredMatrix<PrimeField> {
    matrix(s, t, PrimeField::default())
}

fn q(s: usize, t: usize) -> BarredMatrix<Rationals> {
    matrix(s, t, Rationals)
}

/// Verifies and checks the verdict and wall time.
fn prove<F: Field>(m: &BarredMatrix<F>, set: &EquationSet<F>, limit: Duration) -> Result<String, String> {
    let start = Instant::now();
    let cert = verify_defining_set(m, set, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    cert.validate().map_err(|e| e.to_string())?;
    ensure(cert.verdict == Verdict::Proved, || {
        format!("{}: verdict {} witness {:?}", set.label, cert.verdict, cert.witness)
    })?;
    ensure(took < limit, || format!("{}: {took:?} exceeds {limit:?}", set.label))?;
    Ok(format!("{} {}ms", set.label, took.as_millis()))
}

/// Canonical strings of `printed` parsed in `m`'s ring, plus a term-count
/// check so that "term-for-term" also holds.
fn golden<F: Field>(m: &BarredMatrix<F>, ours: &[Poly<F>], printed: &[&str]) -> Result<(), String> {
    ensure(ours.len() == printed.len(), || {
        format!("{} polynomials, expected {}", ours.len(), printed.len())
    })?;
    for (k, (p, text)) in ours.iter().zip(printed).enumerate() {
        let expected = parse_polynomial(text, m.ring()).map_err(|e| e.to_string())?;
        ensure(p.to_string() == expected.to_string(), || {
            format!("F{}: {p} != {expected}", k + 1)
        })?;
        let printed_terms = text.matches(" + ").count() + text.matches(" - ").count() + 1;
        ensure(p.len() == printed_terms, || {
            format!("F{}: {} terms, printed {printed_terms}", k + 1, p.len())
        })?;
    }
    Ok(())
}

fn c1() -> Outcome {
    let start = Instant::now();
    let m = q(2, 1);
    let set = stci_s2(&m, false).map_err(|e| e.to_string())?;
    golden(
        &m,
        &set.polys,
        &["x1*x4^2 - x2*x3*x4 + x2*z1", "x1*x3*x4 - x2*x3^2 + x1*z1"],
    )?;
    let delta = &m.x(1) * &m.x(4) - &m.x(2) * &m.x(3);
    ensure(set.polys[0] == &m.x(4) * &delta + &m.x(2) * &m.z(1), || {
        "F1 != x4 [12] + x2 z1".into()
    })?;
    ensure(set.polys[1] == &m.x(3) * &delta + &m.x(1) * &m.z(1), || {
        "F2 != x3 [12] + x1 z1".into()
    })?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("{took:?}"))?;
    Ok(format!("{} | {}", set.polys[0], set.polys[1]))
}

const T2: [&str; 3] = [
    "x1*x3*x4^3 - x1*x4^2*z1 - x2*x3^2*x4^2 + 2*x2*x3*x4*z1 - x2*z1^2 + x1*z2",
    "x1*x4^4 - x2*x3*x4^3 + x2*x4^2*z1 + x2*z2",
    "x1*x4*x3 - x2*x3^2 + x1*z1 + y0*z2",
];

const T3: [&str; 4] = [
    "x1*x3^3*x4^5 - 3*x1*x3^2*x4^4*z1 + 3*x1*x3*x4^3*z1^2 - x1*x4^2*z1^3 - x2*x3^4*x4^4 + 4*x2*x3^3*x4^3*z1 - 6*x2*x3^2*x4^2*z1^2 + 4*x2*x3*x4*z1^3 - x2*z1^4 + x1*x3^2*x4^2*z2 - 2*x1*x3*x4*z1*z2 + x1*z1^2*z2 + x1*z3",
    "x1*x3^2*x4^6 - 2*x1*x3*x4^5*z1 + 2*x1*x3*x4^3*z2 + x1*x4^4*z1^2 - 2*x1*x4^2*z1*z2 - x2*x3^3*x4^5 - x2*x3^2*x4^2*z2 + 3*x2*x3^2*x4^4*z1 - 3*x2*x3*x4^3*z1^2 + 2*x2*x3*x4*z1*z2 + x2*x4^2*z1^3 - x2*z1^2*z2 + x1*z2^2 + x2*z3",
    "x1*x4^4 - x2*x3*x4^3 + x2*x4^2*z1 + x2*z2 + y0*z3",
    "x1*x3*x4 - x2*x3^2 + x1*z1 + y0*z2 + y1*z3",
];

fn c2() -> Outcome {
    let start = Instant::now();
    for (t, printed) in [(2, &T2[..]), (3, &T3[..])] {
        let m = q(2, t);
        let set = stci_s2(&m, false).map_err(|e| e.to_string())?;
        golden(&m, &set.polys, printed).map_err(|e| format!("t = {t}: {e}"))?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("{took:?}"))?;
    Ok(format!("t = 2 and t = 3 match in {}ms", took.as_millis()))
}

fn c3() -> Outcome {
    let limit = Duration::from_secs(60);
    let mut notes = Vec::new();
    for t in 1..=3 {
        let m = q(2, t);
        let set = stci_s2(&m, false).map_err(|e| e.to_string())?;
        notes.push(format!("Q {}", prove(&m, &set, limit)?));
    }
    for t in 1..=4 {
        let m = fp(2, t);
        let set = stci_s2(&m, false).map_err(|e| e.to_string())?;
        notes.push(format!("Fp {}", prove(&m, &set, limit)?));
    }
    Ok(notes.join(", "))
}

fn c4() -> Outcome {
    let limit = Duration::from_secs(60);
    let mut notes = Vec::new();
    for t in 1..=3 {
        let m = q(2, t);
        let set = stci_s2(&m, true).map_err(|e| e.to_string())?;
        ensure(set.polys.iter().all(|f| f.is_homogeneous()), || {
            format!("t = {t}: not homogeneous")
        })?;
        notes.push(format!("Q {}", prove(&m, &set, limit)?));
        let m = fp(2, t);
        notes.push(format!(
            "Fp {}",
            prove(&m, &stci_s2(&m, true).map_err(|e| e.to_string())?, limit)?
        ));
    }
    Ok(notes.join(", "))
}

fn c5() -> Outcome {
    let mut notes = Vec::new();
    for (s, n) in [(3, 4), (4, 6), (5, 8)] {
        let m = fp(s, 1);
        let set = explicit_small(&m).map_err(|e| e.to_string())?;
        ensure(set.len() == n, || format!("s = {s}: {} polynomials", set.len()))?;
        let exact = bounds_oracle(s, 1, 32003).map_err(|e| e.to_string())?.ara_exact;
        ensure(exact == Some(n), || format!("s = {s}: oracle exact {exact:?}"))?;
        notes.push(prove(&m, &set, Duration::from_secs(120))?);
    }
    Ok(notes.join(", "))
}

fn c6() -> Outcome {
    let mut notes = Vec::new();
    for (s, t) in [(3, 1), (3, 2), (4, 1)] {
        let m = fp(s, t);
        let set = theorem7_set(&m).map_err(|e| e.to_string())?;
        ensure(set.len() == 2 * s + t - 2, || {
            format!("({s},{t}): {} polynomials", set.len())
        })?;
        notes.push(prove(&m, &set, Duration::from_secs(300))?);
    }
    Ok(notes.join(", "))
}

fn c7() -> Outcome {
    let mut notes = Vec::new();
    for s in [3, 4] {
        for field_is_q in [false, true] {
            let ok = if field_is_q {
                let m = q(s, 0);
                let sums = Ideal::new(m.ring(), (1..=2 * s - 3).map(|k| s_sum(&m, k)).collect()).unwrap();
                radical_equal(&build_ideal_is(&m), &sums)
            } else {
                let m = fp(s, 0);
                let sums = Ideal::new(m.ring(), (1..=2 * s - 3).map(|k| s_sum(&m, k)).collect()).unwrap();
                radical_equal(&build_ideal_is(&m), &sums)
            }
            .map_err(|e| e.to_string())?;
            ensure(ok, || format!("s = {s}: radicals differ"))?;
        }
        notes.push(format!("s = {s} over Q and Fp"));
    }
    Ok(notes.join(", "))
}

fn c8() -> Outcome {
    for (s, t) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let m = fp(s, t);
        let comps = prime_components(&m).map_err(|e| e.to_string())?;
        let mut acc = comps[0].clone();
        for c in &comps[1..] {
            acc = intersect(&acc, c).map_err(|e| e.to_string())?;
        }
        let j = build_ideal_j(&m);
        let same = acc.groebner().unwrap().basis() == j.groebner().unwrap().basis();
        ensure(same, || format!("({s},{t}): intersection differs from J"))?;
    }
    Ok("(2,1) (2,2) (3,1) (3,2)".into())
}

fn c9() -> Outcome {
    let mut count = 0;
    for s in 2..=6 {
        for t in 1..=7 - s {
            for ident in [Identification::Distinct, Identification::Bar] {
                let spec = BarredMatrixSpec::new(s, t, ident.clone()).map_err(|e| e.to_string())?;
                let m = BarredMatrix::new(&spec, PrimeField::default(), TermOrder::DegRevLex);
                let h = height(&build_ideal_j(&m)).map_err(|e| e.to_string())?;
                ensure(h == s + t - 1, || format!("({s},{t},{ident}): height {h}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} cases"))
}

fn c10() -> Outcome {
    let mut count = 0;
    for s in 2..=6 {
        for t in 1..=6 {
            for ch in [0u64, 32003] {
                let r = bounds_oracle(s, t, ch).map_err(|e| e.to_string())?;
                let exact = match (s, t) {
                    (2, _) => Some(t + 1),
                    (3, 1) => Some(4),
                    (4, 1) => Some(6),
                    (5, 1) => Some(8),
                    _ => None,
                };
                let cd = if ch > 0 { s + t - 1 } else { 2 * s + t - 3 };
                let ok = r.ara_lower == 2 * s + t - 3
                    && r.ara_upper == 2 * s + t - 2
                    && r.ara_exact == exact
                    && r.cd == cd
                    && r.height == s + t - 1
                    && r.ara_exact.is_none_or(|e| r.ara_lower <= e && e <= r.ara_upper)
                    && r.cd <= r.ara_exact.unwrap_or(r.ara_upper);
                ensure(ok, || format!("({s},{t},char {ch}): {r:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} rows"))
}

fn c11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // reduced-basis uniqueness under shuffles, against the naive oracle
    let mut bases = Vec::new();
    for order in [TermOrder::DegRevLex, TermOrder::Lex] {
        let ring = ring3(order);
        for _ in 0..4 {
            let mut gens: Vec<_> = (0..3).map(|_| random_nonconstant(&mut rng, &ring, 3, 2)).collect();
            let oracle = naive_reduced_gb(&gens);
            for _ in 0..20 {
                gens.shuffle(&mut rng);
                let gb = buchberger(&ring, &gens, &Default::default()).map_err(|e| e.to_string())?;
                ensure(gb.basis() == &oracle[..], || format!("basis differs for {gens:?}"))?;
            }
            bases.push(oracle);
        }
    }
    let m = fp(2, 2);
    let mut jg = j_generators(&m);
    let j_oracle = buchberger(m.ring(), &jg, &Default::default()).unwrap().into_basis();
    for _ in 0..20 {
        jg.shuffle(&mut rng);
        let gb = buchberger(m.ring(), &jg, &Default::default()).unwrap();
        ensure(gb.basis() == &j_oracle[..], || "J_{2,2} basis depends on order".into())?;
    }

    // every S-polynomial of every emitted basis reduces to zero
    let mut emitted: Vec<Vec<Poly<PrimeField>>> = bases;
    emitted.push(j_oracle);
    for (s, t) in [(2, 3), (3, 2)] {
        let m = fp(s, t);
        emitted.push(build_ideal_j(&m).groebner().unwrap().basis().to_vec());
        for c in prime_components(&m).unwrap() {
            emitted.push(c.groebner().unwrap().basis().to_vec());
        }
    }
    let mut spolys = 0;
    for b in &emitted {
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                ensure(naive_nf(&naive_spoly(&b[i], &b[j]), b).is_zero(), || {
                    "S-polynomial survives".into()
                })?;
                spolys += 1;
            }
        }
    }

    // radical membership against power search
    let ring = ring3(TermOrder::DegRevLex);
    let (mut yes, mut no) = (0, 0);
    for k in 0..50 {
        let a1 = random_nonconstant(&mut rng, &ring, 2, 2);
        let a2 = random_nonconstant(&mut rng, &ring, 2, 2);
        let gens = vec![a1.pow(rng.gen_range(1..=3)), a2.pow(rng.gen_range(1..=3))];
        let f = if k % 2 == 0 {
            &a1 * &random_poly(&mut rng, &ring, 2, 1) + &a2 * &random_poly(&mut rng, &ring, 2, 1)
        } else {
            random_nonconstant(&mut rng, &ring, 3, 2)
        };
        let ideal = Ideal::new(&ring, gens.clone()).unwrap();
        let engine = radical_membership(&f, &ideal).map_err(|e| e.to_string())?.in_radical;
        let oracle = power_search(&f, &gens, 12).is_some();
        ensure(engine == oracle, || {
            format!("f = {f}, I = {gens:?}: engine {engine}, oracle {oracle}")
        })?;
        if oracle {
            yes += 1;
        } else {
            no += 1;
        }
    }

    // the two-polynomial radical identity
    for _ in 0..25 {
        let v: Vec<_> = (0..5).map(|_| random_poly(&mut rng, &ring, 2, 1)).collect();
        let delta = &v[0] * &v[2] - &v[1] * &v[3];
        let left = Ideal::new(&ring, vec![delta, &v[2] * &v[4], &v[3] * &v[4]]).unwrap();
        let (f1, f2) = lemma1_combine(&v[0], &v[1], &v[2], &v[3], &v[4]);
        let right = Ideal::new(&ring, vec![f1, f2]).unwrap();
        ensure(radical_equal(&left, &right).map_err(|e| e.to_string())?, || {
            format!("identity fails on {v:?}")
        })?;
    }
    Ok(format!(
        "shuffles ok, {spolys} S-polynomials, membership {yes} in / {no} out, 25 identities"
    ))
}

fn c12() -> Outcome {
    let m = fp(2, 3);
    let (s, t) = (m.s(), m.t());
    let mut dropped = m.minors();
    for i in 1..=s {
        dropped.extend((1..=t).map(|j| m.x(i) * m.z(j)));
    }
    let class3: Vec<String> = (0..t)
        .flat_map(|i| (i + 2..=t).map(move |j| (i, j)))
        .map(|(i, j)| (m.y(i) * m.z(j)).to_string())
        .collect();
    let set = EquationSet {
        label: "J without class III".into(),
        polys: dropped.clone(),
        metadata: Default::default(),
        hints: Vec::new(),
    };
    let cert = verify_defining_set(&m, &set, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    cert.validate().map_err(|e| e.to_string())?;
    ensure(cert.verdict == Verdict::Refuted, || format!("verdict {}", cert.verdict))?;
    let w = cert.witness.clone().ok_or("no witness")?;
    ensure(class3.contains(&w), || {
        format!("witness {w} is not a class III generator")
    })?;
    let wp = parse_polynomial(&w, m.ring()).map_err(|e| e.to_string())?;
    ensure(power_search(&wp, &dropped, 12).is_none(), || {
        "oracle finds the witness in the radical".into()
    })?;
    Ok(format!("refuted, witness {w}"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("golden base pair", c1),
        ("golden t = 2, 3 sets", c2),
        ("s = 2 sets define J_{2,t}", c3),
        ("homogeneous variant", c4),
        ("explicit t = 1 sets", c5),
        ("2s+t-2 sets for s >= 3", c6),
        ("I_s as radical of the S_k", c7),
        ("prime decomposition", c8),
        ("height s+t-1", c9),
        ("bounds table", c10),
        ("engine property suites", c11),
        ("negative control", c12),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({ms} ms): {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({ms} ms): {detail}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
