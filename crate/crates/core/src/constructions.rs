//! Candidate defining sets for `J_{s,t}` and the two radical-combination
//! rules they are built from.
//!
//! * [`stci_s2`]: the `t+1` polynomials for `s = 2`, built recursively from
//!   the `t = 1` pair, optionally homogeneous.
//! * [`theorem7_set`]: `2s+t-2` polynomials `T_h`, `U_l`, `S_k` for `s >= 3`.
//! * [`explicit_small`]: the hand-made `4, 6, 8` polynomial sets for
//!   `t = 1`, `s = 3, 4, 5`.

use std::collections::BTreeMap;
use std::num::NonZeroU32;

use crate::error::{ConstructionError, SpecError};
use crate::ideal::{radical_membership, Ideal};
use crate::minvar::BarredMatrix;
use crate::poly::{Field, Monomial, Poly};

/// An ordered candidate defining set with a construction trace.
#[derive(Clone, Debug)]
pub struct EquationSet<F: Field> {
    pub label: String,
    pub polys: Vec<Poly<F>>,
    pub metadata: BTreeMap<String, String>,
    /// Intermediate claims in proof order; empty when the construction
    /// has none. Verifiers check each one, they are never trusted.
    pub hints: Vec<Hint<F>>,
}

/// The claim `claim ∈ √(within)`, where `within` is drawn from the set and
/// from earlier claims.
#[derive(Clone, Debug)]
pub struct Hint<F: Field> {
    pub claim: Poly<F>,
    pub within: Vec<Poly<F>>,
}

impl<F: Field> EquationSet<F> {
    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.polys.iter().map(|p| p.to_string()).collect()
    }
}

/// `(α1 δ + β2 γ, α2 δ + β1 γ)` with `δ = α1 β1 - α2 β2`; both have the
/// same radical as `(δ, β1 γ, β2 γ)`.
pub fn lemma1_combine<F: Field>(
    a1: &Poly<F>,
    a2: &Poly<F>,
    b1: &Poly<F>,
    b2: &Poly<F>,
    gamma: &Poly<F>,
) -> (Poly<F>, Poly<F>) {
    let delta = a1 * b1 - a2 * b2;
    (a1 * &delta + b2 * gamma, a2 * &delta + b1 * gamma)
}

/// `q_l = Σ_{p ∈ P_l} p^{e(p)}` for each group.
///
/// Hypothesis (ii) is checked: for distinct `p, p'` in group `l`, `p p'`
/// must lie in the radical of `I + (P_1 ∪ ... ∪ P_{l-1})`.
pub fn lemma2_combine<F: Field>(
    ideal: &Ideal<F>,
    groups: &[Vec<Poly<F>>],
    exponent: impl Fn(&Poly<F>) -> NonZeroU32,
) -> Result<Vec<Poly<F>>, ConstructionError> {
    let ring = ideal.ring();
    let mut base: Vec<Poly<F>> = ideal.generators().to_vec();
    let mut out = Vec::with_capacity(groups.len());
    for (l, group) in groups.iter().enumerate() {
        if group.iter().any(|p| !p.ring().same_as(ring)) {
            return Err(ConstructionError::Ideal(crate::error::IdealError::RingMismatch));
        }
        if group.len() > 1 {
            let earlier = Ideal::new(ring, base.clone())?.with_options(*ideal.options());
            for (a, p) in group.iter().enumerate() {
                for q in &group[a + 1..] {
                    if p == q {
                        continue;
                    }
                    if !radical_membership(&(p * q), &earlier)?.in_radical {
                        return Err(ConstructionError::Hypothesis {
                            group: l + 1,
                            first: p.to_string(),
                            second: q.to_string(),
                        });
                    }
                }
            }
        }
        let q = group
            .iter()
            .fold(Poly::zero(ring), |acc, p| acc + p.pow(exponent(p).get()));
        out.push(q);
        base.extend(group.iter().cloned());
    }
    Ok(out)
}

/// Splits `g = P x_a - Q x_b`: terms divisible by `x_a` go to `P`, the
/// rest must be divisible by `x_b` and go to `-Q`.
pub fn extract_pq<F: Field>(g: &Poly<F>, xa: usize, xb: usize) -> Result<(Poly<F>, Poly<F>), ConstructionError> {
    let ring = g.ring();
    let n = ring.nvars();
    let field = ring.field();
    let ma = Monomial::var(n, xa, 1);
    let mb = Monomial::var(n, xb, 1);
    let mut p_terms = Vec::new();
    let mut q_terms = Vec::new();
    for t in g.terms() {
        if t.mono.exponent(xa) > 0 {
            p_terms.push((t.coeff.clone(), t.mono.div(&ma)));
        } else if t.mono.exponent(xb) > 0 {
            q_terms.push((field.neg(&t.coeff), t.mono.div(&mb)));
        } else {
            return Err(ConstructionError::NotInX1X2(g.to_string()));
        }
    }
    Ok((Poly::from_terms(ring, p_terms), Poly::from_terms(ring, q_terms)))
}

fn degree<F: Field>(p: &Poly<F>) -> u32 {
    p.total_degree().unwrap_or(0)
}

/// `z^e` with `e` making `summand + other * z^e` homogeneous, or `e = 1`.
fn z_exponent<F: Field>(homogeneous: bool, summand: &Poly<F>, other_degree: u32) -> u32 {
    if homogeneous {
        (degree(summand).saturating_sub(other_degree)).max(1)
    } else {
        1
    }
}

/// `F_1, ..., F_{t+1}` for `J_{2,t}`.
///
/// Level 1 is the pair obtained from [`lemma1_combine`] with
/// `(x_4, x_3, x_1, x_2, z_1)`. Level `k` sets `G_1 = P x_1 - Q x_2` and
/// `F_1 = Q G_1 + x_1 z_k`, `F_2 = P G_1 + x_2 z_k`,
/// `F_i = G_{i-1} + y_{i-3} z_k`.
///
/// With `homogeneous`, each `z_k` factor gets the smallest power making its
/// polynomial homogeneous; `F_1` and `F_2` always share one power.
pub fn stci_s2<F: Field>(m: &BarredMatrix<F>, homogeneous: bool) -> Result<EquationSet<F>, ConstructionError> {
    let t = m.t();
    if m.s() != 2 || t == 0 {
        return Err(SpecError::InvalidParameters(format!(
            "stci_s2 needs s = 2 and t >= 1, got s = {}, t = {t}",
            m.s()
        ))
        .into());
    }
    let x1_var = m.x(1).variables()[0];
    let x2_var = m.x(2).variables()[0];
    let mut metadata = BTreeMap::new();

    let base_exp = if homogeneous { 2 } else { 1 };
    let z1 = m.z(1).pow(base_exp);
    let (f1, f2) = lemma1_combine(&m.x(4), &m.x(3), &m.x(1), &m.x(2), &z1);
    let mut g = vec![f1, f2];
    metadata.insert("level1.exponents".into(), format!("{base_exp},{base_exp}"));
    let mut levels = vec![g.clone()];

    for k in 2..=t {
        let (p, q) = extract_pq(&g[0], x1_var, x2_var)?;
        metadata.insert(format!("level{k}.P"), p.to_string());
        metadata.insert(format!("level{k}.Q"), q.to_string());
        let zk = m.z(k);
        let qg = &q * &g[0];
        let pg = &p * &g[0];
        let e12 = z_exponent(homogeneous, &qg, 1);
        let zp = zk.pow(e12);
        let mut next = vec![qg + m.x(1) * &zp, pg + m.x(2) * &zp];
        let mut exps = vec![e12, e12];
        for i in 3..=k + 1 {
            let gi = &g[i - 2];
            let e = z_exponent(homogeneous, gi, 1);
            exps.push(e);
            next.push(gi + &(m.y(i - 3) * zk.pow(e)));
        }
        metadata.insert(
            format!("level{k}.exponents"),
            exps.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
        );
        g = next;
        levels.push(g.clone());
    }
    let label = format!("{}(s=2,t={t})", if homogeneous { "s2-homog" } else { "s2" });
    Ok(EquationSet {
        label,
        polys: g,
        metadata,
        hints: stci_hints(m, &levels),
    })
}

/// Claims following the induction, top level first: [`lemma1_combine`] gives `G_1`
/// and `x_1 z_k, x_2 z_k` from `F_1, F_2`; then each `G_l` follows from
/// `F_{l+1}` and the `z_k` products already obtained, since
/// `G_l ∈ (x_1, x_2, y_0, ..., y_{l-3})`.
fn stci_hints<F: Field>(m: &BarredMatrix<F>, levels: &[Vec<Poly<F>>]) -> Vec<Hint<F>> {
    let hint = |claim: &Poly<F>, within: &[&Poly<F>]| Hint {
        claim: claim.clone(),
        within: within.iter().map(|&p| p.clone()).collect(),
    };
    let mut hints = Vec::new();
    for k in (1..=levels.len()).rev() {
        let f = &levels[k - 1];
        let zk = m.z(k);
        let x1z = m.x(1) * &zk;
        let x2z = m.x(2) * &zk;
        let g1 = if k == 1 {
            m.minor(1, 2)
        } else {
            levels[k - 2][0].clone()
        };
        hints.push(hint(&g1, &[&f[0], &f[1]]));
        hints.push(hint(&x1z, &[&f[0], &f[1], &g1]));
        hints.push(hint(&x2z, &[&f[0], &f[1], &g1]));
        let mut products = vec![x1z, x2z];
        for l in 2..=k {
            let gl = &levels[k - 2][l - 1];
            let fl = &f[l];
            let mut within: Vec<&Poly<F>> = products.iter().collect();
            within.push(fl);
            hints.push(hint(gl, &within));
            let yz = m.y(l - 2) * &zk;
            hints.push(hint(&yz, &[gl, fl]));
            products.push(yz);
        }
    }
    hints
}

/// `T_h = Σ_{i=1}^{s+t-1} ξ_i z_{i+t-h}` with `z_j = 0` outside `1..=t`.
pub fn t_sum<F: Field>(m: &BarredMatrix<F>, h: usize) -> Poly<F> {
    let (s, t) = (m.s(), m.t());
    (1..s + t).fold(Poly::zero(m.ring()), |acc, i| {
        acc + m.xi(i) * m.z_or_zero(i as isize + t as isize - h as isize)
    })
}

/// Nonzero monomial summands of `T_h`.
pub fn t_summands<F: Field>(m: &BarredMatrix<F>, h: usize) -> Vec<Poly<F>> {
    let (s, t) = (m.s(), m.t());
    (1..s + t)
        .map(|i| m.xi(i) * m.z_or_zero(i as isize + t as isize - h as isize))
        .filter(|p| !p.is_zero())
        .collect()
}

/// `S_k = Σ_{i+j=k+2, i<j} [ij]`, `1 <= k <= 2s-3`.
pub fn s_sum<F: Field>(m: &BarredMatrix<F>, k: usize) -> Poly<F> {
    let s = m.s();
    (1..=s)
        .flat_map(|i| (i + 1..=s).map(move |j| (i, j)))
        .filter(|(i, j)| i + j == k + 2)
        .fold(Poly::zero(m.ring()), |acc, (i, j)| acc + m.minor(i, j))
}

/// `(T_1..T_{t+1}, U_1..U_{s-2}, S_{s-1}..S_{2s-3})` with
/// `U_l = S_l + T_{l+t+1}`.
pub fn theorem7_set<F: Field>(m: &BarredMatrix<F>) -> Result<EquationSet<F>, ConstructionError> {
    let (s, t) = (m.s(), m.t());
    if s < 3 || t == 0 {
        return Err(SpecError::InvalidParameters(format!(
            "theorem7_set needs s >= 3 and t >= 1, got s = {s}, t = {t}"
        ))
        .into());
    }
    let mut polys: Vec<Poly<F>> = (1..=t + 1).map(|h| t_sum(m, h)).collect();
    polys.extend((1..=s - 2).map(|l| s_sum(m, l) + t_sum(m, l + t + 1)));
    polys.extend((s - 1..=2 * s - 3).map(|k| s_sum(m, k)));
    let mut metadata = BTreeMap::new();
    metadata.insert("T".into(), format!("1..={}", t + 1));
    metadata.insert("U".into(), format!("1..={}", s - 2));
    metadata.insert("S".into(), format!("{}..={}", s - 1, 2 * s - 3));
    Ok(EquationSet {
        label: format!("thm7(s={s},t={t})"),
        polys,
        metadata,
        hints: Vec::new(),
    })
}

/// The hand-made sets for `J_{3,1}`, `J_{4,1}`, `J_{5,1}`.
pub fn explicit_small<F: Field>(m: &BarredMatrix<F>) -> Result<EquationSet<F>, ConstructionError> {
    let s = m.s();
    if m.t() != 1 {
        return Err(SpecError::InvalidParameters(format!("explicit sets need t = 1, got {}", m.t())).into());
    }
    let b = |i: usize, j: usize| m.minor(i, j);
    let z = m.z(1);
    // x_k z_1 + x_{s+k} [12]
    let tail = |k: usize| m.x(k) * &z + m.x(s + k) * b(1, 2);
    let polys = match s {
        3 => vec![b(2, 3), tail(1), b(1, 3) + tail(2), tail(3)],
        4 => vec![
            b(2, 4),
            b(1, 4) + b(2, 3),
            b(3, 4) + tail(1),
            b(1, 3) + tail(2),
            tail(3),
            tail(4),
        ],
        5 => vec![
            b(1, 4) + b(2, 3),
            b(1, 5) + b(2, 4),
            b(2, 5) + b(3, 4),
            b(3, 5) + tail(1),
            b(1, 3) + tail(2),
            b(4, 5) + tail(3),
            tail(4),
            tail(5),
        ],
        _ => return Err(ConstructionError::Unsupported(s)),
    };
    Ok(EquationSet {
        label: format!("explicit(s={s},t=1)"),
        polys,
        metadata: BTreeMap::new(),
        hints: Vec::new(),
    })
}
