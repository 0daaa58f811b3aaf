//! Barred matrices `A_{s,t}`, the ideals `J_{s,t}`, `I_s`, `L_{s,t}`, the
//! prime components `J_0, ..., J_t` and the closed-form bounds table.
//!
//! Indices follow the matrix layout: `x(1..=2s)`, `y(0..t)`, `z(1..=t)`.
//! Column `k >= 1` of the small blocks holds `y_{k-1}` over `z_k`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::SpecError;
use crate::ideal::Ideal;
use crate::poly::{field::is_prime, Field, Poly, Ring, TermOrder, VariableTable};

/// Upper limit on `s` and `t`; keeps rings within the 64-variable masks.
pub const MAX_PARAM: usize = 16;

/// Which entries of `A_{s,t}` coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Identification {
    Distinct,
    /// `x_{2s} = y_0` and `z_i = y_i` for `1 <= i <= t-1`.
    Bar,
    /// `x_{2s} = y_0` optionally, plus `z_i = y_j` pairs with
    /// `1 <= i <= j <= t-1`, no index used twice on either side.
    Custom {
        x2s_is_y0: bool,
        z_to_y: Vec<(usize, usize)>,
    },
}

impl fmt::Display for Identification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identification::Distinct => f.write_str("distinct"),
            Identification::Bar => f.write_str("bar"),
            Identification::Custom { x2s_is_y0, z_to_y } => {
                let mut items: Vec<String> = Vec::new();
                if *x2s_is_y0 {
                    items.push("x2s=y0".into());
                }
                items.extend(z_to_y.iter().map(|(i, j)| format!("z{i}=y{j}")));
                write!(f, "custom:{}", items.join(","))
            }
        }
    }
}

impl FromStr for Identification {
    type Err = SpecError;

    /// `distinct`, `bar`, or `custom:` followed by comma-separated items
    /// `x2s=y0` and `zI=yJ`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "distinct" => return Ok(Identification::Distinct),
            "bar" => return Ok(Identification::Bar),
            _ => {}
        }
        let bad = || SpecError::InvalidIdentification(format!("cannot parse `{s}`"));
        let body = s.strip_prefix("custom:").ok_or_else(bad)?;
        let mut x2s_is_y0 = false;
        let mut z_to_y = Vec::new();
        for item in body.split(',').map(str::trim).filter(|i| !i.is_empty()) {
            if item == "x2s=y0" {
                x2s_is_y0 = true;
                continue;
            }
            let (lhs, rhs) = item.split_once('=').ok_or_else(bad)?;
            let i = lhs
                .trim()
                .strip_prefix('z')
                .and_then(|d| d.parse().ok())
                .ok_or_else(bad)?;
            let j = rhs
                .trim()
                .strip_prefix('y')
                .and_then(|d| d.parse().ok())
                .ok_or_else(bad)?;
            z_to_y.push((i, j));
        }
        Ok(Identification::Custom { x2s_is_y0, z_to_y })
    }
}

impl From<Identification> for String {
    fn from(i: Identification) -> String {
        i.to_string()
    }
}

impl TryFrom<String> for Identification {
    type Error = SpecError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Validated `(s, t, identification)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BarredMatrixSpec {
    s: usize,
    t: usize,
    ident: Identification,
}

impl BarredMatrixSpec {
    /// `t = 0` is accepted for the pure-minor ideal `I_s` only, so it admits
    /// no identifications.
    pub fn new(s: usize, t: usize, ident: Identification) -> Result<Self, SpecError> {
        if !(2..=MAX_PARAM).contains(&s) {
            return Err(SpecError::InvalidParameters(format!(
                "s = {s} must lie in 2..={MAX_PARAM}"
            )));
        }
        if t > MAX_PARAM {
            return Err(SpecError::InvalidParameters(format!(
                "t = {t} must lie in 0..={MAX_PARAM}"
            )));
        }
        if let Identification::Custom { x2s_is_y0, z_to_y } = &ident {
            if *x2s_is_y0 && t == 0 {
                return Err(SpecError::InvalidIdentification("x2s=y0 needs t >= 1".into()));
            }
            let mut lhs = HashSet::new();
            let mut rhs = HashSet::new();
            for &(i, j) in z_to_y {
                if !(1 <= i && i <= j && j < t) {
                    return Err(SpecError::InvalidIdentification(format!(
                        "z{i}=y{j} violates 1 <= i <= j <= t-1 = {}",
                        t as isize - 1
                    )));
                }
                if !lhs.insert(i) || !rhs.insert(j) {
                    return Err(SpecError::InvalidIdentification(format!(
                        "z{i}=y{j} reuses an entry already identified"
                    )));
                }
            }
        }
        if ident == Identification::Bar && t == 0 {
            return Err(SpecError::InvalidIdentification("bar needs t >= 1".into()));
        }
        Ok(BarredMatrixSpec { s, t, ident })
    }

    pub fn distinct(s: usize, t: usize) -> Result<Self, SpecError> {
        Self::new(s, t, Identification::Distinct)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn identification(&self) -> &Identification {
        &self.ident
    }

    fn slot_x(&self, k: usize) -> usize {
        k - 1
    }

    fn slot_y(&self, i: usize) -> usize {
        2 * self.s + i
    }

    fn slot_z(&self, j: usize) -> usize {
        2 * self.s + self.t + j - 1
    }

    fn slot_name(&self, slot: usize) -> String {
        let (s, t) = (self.s, self.t);
        if slot < 2 * s {
            format!("x{}", slot + 1)
        } else if slot < 2 * s + t {
            format!("y{}", slot - 2 * s)
        } else {
            format!("z{}", slot - 2 * s - t + 1)
        }
    }

    /// For every slot, the slot whose variable it shares.
    fn aliases(&self) -> Vec<usize> {
        let mut alias: Vec<usize> = (0..2 * (self.s + self.t)).collect();
        let (x2s_is_y0, pairs): (bool, Vec<(usize, usize)>) = match &self.ident {
            Identification::Distinct => (false, Vec::new()),
            Identification::Bar => (true, (1..self.t).map(|i| (i, i)).collect()),
            Identification::Custom { x2s_is_y0, z_to_y } => (*x2s_is_y0, z_to_y.clone()),
        };
        if x2s_is_y0 {
            alias[self.slot_y(0)] = self.slot_x(2 * self.s);
        }
        for (i, j) in pairs {
            alias[self.slot_z(i)] = self.slot_y(j);
        }
        alias
    }

    /// Number of distinct indeterminates.
    pub fn nvars(&self) -> usize {
        self.aliases().iter().enumerate().filter(|(k, a)| k == *a).count()
    }
}

/// `A_{s,t}` with its entries resolved to variables of a ring.
#[derive(Clone, Debug)]
pub struct BarredMatrix<F: Field> {
    spec: BarredMatrixSpec,
    ring: Arc<Ring<F>>,
    slot_var: Vec<usize>,
}

impl<F: Field> BarredMatrix<F> {
    /// Variables are the unaliased entries in the order
    /// `x_1..x_{2s}, y_0..y_{t-1}, z_1..z_t`.
    pub fn new(spec: &BarredMatrixSpec, field: F, order: TermOrder) -> Self {
        let alias = spec.aliases();
        let mut names = Vec::new();
        let mut own = vec![usize::MAX; alias.len()];
        for (slot, &a) in alias.iter().enumerate() {
            if slot == a {
                own[slot] = names.len();
                names.push(spec.slot_name(slot));
            }
        }
        let slot_var = alias.iter().map(|&a| own[a]).collect();
        let vars = VariableTable::new(&names).expect("generated names are valid and unique");
        BarredMatrix {
            spec: spec.clone(),
            ring: Ring::new(vars, field, order),
            slot_var,
        }
    }

    pub fn spec(&self) -> &BarredMatrixSpec {
        &self.spec
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn s(&self) -> usize {
        self.spec.s
    }

    pub fn t(&self) -> usize {
        self.spec.t
    }

    fn slot(&self, slot: usize) -> Poly<F> {
        Poly::var(&self.ring, self.slot_var[slot])
    }

    /// `x_k`, `1 <= k <= 2s`.
    pub fn x(&self, k: usize) -> Poly<F> {
        assert!((1..=2 * self.s()).contains(&k), "x index {k} out of range");
        self.slot(self.spec.slot_x(k))
    }

    /// `y_i`, `0 <= i <= t-1`.
    pub fn y(&self, i: usize) -> Poly<F> {
        assert!(i < self.t(), "y index {i} out of range");
        self.slot(self.spec.slot_y(i))
    }

    /// `z_j`, `1 <= j <= t`.
    pub fn z(&self, j: usize) -> Poly<F> {
        assert!((1..=self.t()).contains(&j), "z index {j} out of range");
        self.slot(self.spec.slot_z(j))
    }

    /// `z_j`, or zero outside `1..=t`.
    pub fn z_or_zero(&self, j: isize) -> Poly<F> {
        if j >= 1 && j as usize <= self.t() {
            self.z(j as usize)
        } else {
            Poly::zero(&self.ring)
        }
    }

    /// `ξ_i`: `x_i` for `i <= s`, `y_{i-s-1}` for `s < i <= s+t`.
    pub fn xi(&self, i: usize) -> Poly<F> {
        let s = self.s();
        assert!((1..=s + self.t()).contains(&i), "xi index {i} out of range");
        if i <= s {
            self.x(i)
        } else {
            self.y(i - s - 1)
        }
    }

    /// `[ij] = x_i x_{s+j} - x_j x_{s+i}`.
    pub fn minor(&self, i: usize, j: usize) -> Poly<F> {
        let s = self.s();
        self.x(i) * self.x(s + j) - self.x(j) * self.x(s + i)
    }

    /// Class (I): all `[ij]`, `i < j`.
    pub fn minors(&self) -> Vec<Poly<F>> {
        let s = self.s();
        (1..=s)
            .flat_map(|i| (i + 1..=s).map(move |j| (i, j)))
            .map(|(i, j)| self.minor(i, j))
            .collect()
    }
}

fn dedup<F: Field>(polys: Vec<Poly<F>>) -> Vec<Poly<F>> {
    let mut seen = HashSet::new();
    polys.into_iter().filter(|p| seen.insert(p.clone())).collect()
}

/// Generators of `J_{s,t}`: classes (I), (II) `x_i z_j`, (III) `y_i z_j`
/// with `0 <= i <= j-2`, in that order and without repeats.
pub fn j_generators<F: Field>(m: &BarredMatrix<F>) -> Vec<Poly<F>> {
    let (s, t) = (m.s(), m.t());
    let mut gens = m.minors();
    for i in 1..=s {
        gens.extend((1..=t).map(|j| m.x(i) * m.z(j)));
    }
    for i in 0..t {
        gens.extend((i + 2..=t).map(|j| m.y(i) * m.z(j)));
    }
    dedup(gens)
}

pub fn build_ideal_j<F: Field>(m: &BarredMatrix<F>) -> Ideal<F> {
    Ideal::new(m.ring(), j_generators(m)).expect("generators built in the matrix ring")
}

/// `I_s`, the ideal of the minors of the big block.
pub fn build_ideal_is<F: Field>(m: &BarredMatrix<F>) -> Ideal<F> {
    Ideal::new(m.ring(), m.minors()).expect("generators built in the matrix ring")
}

/// Monomial generators `ξ_i z_j`, `1 <= i <= s+t-1`, `i-s+1 <= j <= t`.
pub fn l_generators<F: Field>(m: &BarredMatrix<F>) -> Vec<Poly<F>> {
    let (s, t) = (m.s(), m.t());
    let mut gens = Vec::new();
    for i in 1..s + t {
        let lo = (i + 1).saturating_sub(s).max(1);
        gens.extend((lo..=t).map(|j| m.xi(i) * m.z(j)));
    }
    dedup(gens)
}

/// `L_{s,t}`; requires `t >= 1`.
pub fn build_ideal_lst<F: Field>(m: &BarredMatrix<F>) -> Result<Ideal<F>, SpecError> {
    if m.t() == 0 {
        return Err(SpecError::InvalidParameters("L_{s,t} needs t >= 1".into()));
    }
    Ok(Ideal::new(m.ring(), l_generators(m)).expect("generators built in the matrix ring"))
}

/// `J_0 = (M, D_0)` and `J_i = (P_i, D_i)` for `1 <= i <= t`, where
/// `P_i = {x_1..x_s, y_0..y_{i-2}}` and `D_i = {z_{i+1}..z_t}`.
pub fn prime_components<F: Field>(m: &BarredMatrix<F>) -> Result<Vec<Ideal<F>>, SpecError> {
    let (s, t) = (m.s(), m.t());
    if t == 0 {
        return Err(SpecError::InvalidParameters("prime components need t >= 1".into()));
    }
    let d = |i: usize| (i + 1..=t).map(|j| m.z(j)).collect::<Vec<_>>();
    let mut out = Vec::with_capacity(t + 1);
    let mut j0 = m.minors();
    j0.extend(d(0));
    out.push(j0);
    for i in 1..=t {
        let mut gens: Vec<Poly<F>> = (1..=s).map(|k| m.x(k)).collect();
        gens.extend((0..i.saturating_sub(1)).map(|k| m.y(k)));
        gens.extend(d(i));
        out.push(gens);
    }
    Ok(out
        .into_iter()
        .map(|g| Ideal::new(m.ring(), g).expect("generators built in the matrix ring"))
        .collect())
}

/// Closed-form invariants of `J_{s,t}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub s: usize,
    pub t: usize,
    pub characteristic: u64,
    pub height: usize,
    pub ara_lower: usize,
    pub ara_upper: usize,
    /// Present only where the value is known exactly.
    pub ara_exact: Option<usize>,
    pub cd: usize,
}

/// Height, arithmetical-rank interval and cohomological dimension of
/// `J_{s,t}` for `s >= 2`, `t >= 1`.
pub fn bounds_oracle(s: usize, t: usize, characteristic: u64) -> Result<BoundsReport, SpecError> {
    if s < 2 || t < 1 {
        return Err(SpecError::InvalidParameters(format!(
            "bounds need s >= 2 and t >= 1, got s = {s}, t = {t}"
        )));
    }
    if characteristic != 0 && !is_prime(characteristic) {
        return Err(SpecError::InvalidParameters(format!(
            "characteristic {characteristic} is neither 0 nor prime"
        )));
    }
    let ara_exact = match (s, t) {
        (2, _) => Some(t + 1),
        (3, 1) => Some(4),
        (4, 1) => Some(6),
        (5, 1) => Some(8),
        _ => None,
    };
    Ok(BoundsReport {
        s,
        t,
        characteristic,
        height: s + t - 1,
        ara_lower: 2 * s + t - 3,
        ara_upper: 2 * s + t - 2,
        ara_exact,
        cd: if characteristic > 0 { s + t - 1 } else { 2 * s + t - 3 },
    })
}
