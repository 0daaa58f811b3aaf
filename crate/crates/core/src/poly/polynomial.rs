//! Sparse distributed polynomials over a [`Ring`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Exponent, Monomial};
use super::ring::Ring;
use crate::error::PolyError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term<F: Field> {
    pub coeff: F::Elem,
    pub mono: Monomial,
}

impl<F: Field> Hash for Term<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeff.hash(state);
        self.mono.hash(state);
    }
}

/// A polynomial in canonical form: terms strictly descending in the ring's
/// order, no zero coefficients.
#[derive(Clone)]
pub struct Poly<F: Field> {
    ring: Arc<Ring<F>>,
    terms: Vec<Term<F>>,
}

impl<F: Field> Poly<F> {
    pub fn zero(ring: &Arc<Ring<F>>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Arc<Ring<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn from_i64(ring: &Arc<Ring<F>>, n: i64) -> Self {
        Self::constant(ring, ring.field().from_i64(n))
    }

    pub fn var(ring: &Arc<Ring<F>>, i: usize) -> Self {
        Self::monomial(ring, ring.field().one(), Monomial::var(ring.nvars(), i, 1))
    }

    /// The variable called `name`, if the ring has one.
    pub fn var_named(ring: &Arc<Ring<F>>, name: &str) -> Option<Self> {
        ring.vars().position(name).map(|i| Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<Ring<F>>, c: F::Elem, m: Monomial) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if ring.field().is_zero(&c) {
            Vec::new()
        } else {
            vec![Term { coeff: c, mono: m }]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds the canonical form of an arbitrary term list.
    pub fn from_terms(ring: &Arc<Ring<F>>, terms: impl IntoIterator<Item = (F::Elem, Monomial)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::new();
        for (c, m) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Trusts that `terms` is already canonical for `ring`.
    pub(crate) fn from_sorted_terms(ring: &Arc<Ring<F>>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().cmp(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    /// Number of terms; emptiness is [`Poly::is_zero`].
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one()
    }

    pub fn leading_term(&self) -> Result<(&F::Elem, &Monomial), PolyError> {
        self.terms
            .first()
            .map(|t| (&t.coeff, &t.mono))
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Leading monomial; panics on zero.
    pub fn lm(&self) -> &Monomial {
        &self.terms[0].mono
    }

    /// Leading coefficient; panics on zero.
    pub fn lc(&self) -> &F::Elem {
        &self.terms[0].coeff
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|u| u.mono.degree() == t.mono.degree()),
        }
    }

    /// Indices of variables occurring in some term.
    pub fn variables(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars()];
        for t in &self.terms {
            for v in t.mono.support() {
                seen[v] = true;
            }
        }
        seen.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, None))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let minus_one = self.field().neg(&self.field().one());
        Ok(self.merge(other, Some((&minus_one, None))))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mono.checked_mul(&b.mono)?;
                let c = field.mul(&a.coeff, &b.coeff);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc
            .into_iter()
            .filter(|(_, c)| !field.is_zero(c))
            .map(|(mono, coeff)| Term { coeff, mono })
            .collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Ok(Self::from_sorted_terms(&self.ring, terms))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.mul(&t.coeff, c),
                mono: t.mono.clone(),
            })
            .collect();
        Self::from_sorted_terms(&self.ring, terms)
    }

    /// `c * m * self`.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                coeff: field.mul(&t.coeff, c),
                mono: t.mono.mul(m),
            })
            .collect();
        Self::from_sorted_terms(&self.ring, terms)
    }

    /// `self - c * m * g` in one merge pass.
    pub fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        let neg = self.field().neg(c);
        self.merge(g, Some((&neg, Some(m))))
    }

    /// Merge `self + c * m * other` where `scale = Some((c, m))`.
    fn merge(&self, other: &Self, scale: Option<(&F::Elem, Option<&Monomial>)>) -> Self {
        let field = self.field();
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let map_other = |t: &Term<F>| -> Term<F> {
            match scale {
                None => t.clone(),
                Some((c, m)) => Term {
                    coeff: field.mul(&t.coeff, c),
                    mono: match m {
                        Some(m) => t.mono.mul(m),
                        None => t.mono.clone(),
                    },
                },
            }
        };
        let a = &self.terms;
        let mut i = 0;
        let mut rest = other.terms.iter().map(map_other);
        let mut cur = rest.next();
        while let Some(bj) = cur.take() {
            if i == a.len() {
                out.push(bj);
                out.extend(rest.by_ref());
                break;
            }
            match order.cmp(&a[i].mono, &bj.mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                    cur = Some(bj);
                }
                Ordering::Less => {
                    out.push(bj);
                    cur = rest.next();
                }
                Ordering::Equal => {
                    let c = field.add(&a[i].coeff, &bj.coeff);
                    if !field.is_zero(&c) {
                        out.push(Term {
                            coeff: c,
                            mono: bj.mono,
                        });
                    }
                    i += 1;
                    cur = rest.next();
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        Self::from_sorted_terms(&self.ring, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) if self.field().is_one(&t.coeff) => self.clone(),
            Some(t) => {
                let inv = self.field().inv(&t.coeff).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Evaluates at a point given as one field element per variable.
    pub fn evaluate(&self, point: &[F::Elem]) -> F::Elem {
        assert_eq!(point.len(), self.ring.nvars());
        let field = self.field();
        let mut sum = field.zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e > 0 {
                    v = field.mul(&v, &field.pow(&point[i], e as u32));
                }
            }
            sum = field.add(&sum, &v);
        }
        sum
    }

    /// Homomorphic image under `x_i -> assignment[i]`; variables without an
    /// image are sent to the variable of the same name in `target`.
    ///
    /// Panics if an unassigned variable has no namesake in `target` or an
    /// image lives in a different ring.
    pub fn substitute(&self, assignment: &HashMap<usize, Poly<F>>, target: &Arc<Ring<F>>) -> Self {
        let n = self.ring.nvars();
        let images: Vec<Poly<F>> = (0..n)
            .map(|i| match assignment.get(&i) {
                Some(p) => {
                    assert!(p.ring.same_as(target), "substitution image in foreign ring");
                    p.clone()
                }
                None => {
                    let name = self.ring.vars().name(i);
                    Poly::var_named(target, name)
                        .unwrap_or_else(|| panic!("variable `{name}` missing from target ring"))
                }
            })
            .collect();
        let mut power_cache: HashMap<(usize, Exponent), Poly<F>> = HashMap::new();
        let mut acc = Self::zero(target);
        for t in &self.terms {
            let mut prod = Self::constant(target, t.coeff.clone());
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = power_cache.entry((i, e)).or_insert_with(|| images[i].pow(e as u32));
                prod = &prod * &*pw;
                if prod.is_zero() {
                    break;
                }
            }
            acc = &acc + &prod;
        }
        acc
    }

    /// Renames variables: variable `i` of `self` becomes variable `map[i]`
    /// of `target`. Cheaper than [`Poly::substitute`] for pure relabelling.
    pub fn remap(&self, target: &Arc<Ring<F>>, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.ring.nvars());
        let n = target.nvars();
        Self::from_terms(
            target,
            self.terms.iter().map(|t| {
                let mut exps = vec![0 as Exponent; n];
                for (i, &e) in t.mono.exponents().iter().enumerate() {
                    exps[map[i]] += e;
                }
                (t.coeff.clone(), Monomial::from_exponents(&exps))
            }),
        )
    }

    /// Maps into `target` by variable name. Returns `None` when some
    /// occurring variable has no namesake there.
    pub fn embed(&self, target: &Arc<Ring<F>>) -> Option<Self> {
        let used = self.variables();
        let mut map = vec![0usize; self.ring.nvars()];
        for (i, slot) in map.iter_mut().enumerate() {
            match target.vars().position(self.ring.vars().name(i)) {
                Some(j) => *slot = j,
                None if used.contains(&i) => return None,
                None => {}
            }
        }
        Some(self.remap(target, &map))
    }
}

/// `a + c * m * b` over term slices already sorted for `ring`.
pub(crate) fn merge_scaled<F: Field>(
    ring: &Ring<F>,
    a: &[Term<F>],
    b: &[Term<F>],
    c: &F::Elem,
    m: &Monomial,
) -> Vec<Term<F>> {
    let field = ring.field();
    let order = ring.order();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut pending: Option<Term<F>> = None;
    loop {
        if pending.is_none() && j < b.len() {
            pending = Some(Term {
                coeff: field.mul(&b[j].coeff, c),
                mono: b[j].mono.mul(m),
            });
            j += 1;
        }
        let Some(bt) = pending.take() else { break };
        if i == a.len() {
            out.push(bt);
            continue;
        }
        match order.cmp(&a[i].mono, &bt.mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                pending = Some(bt);
            }
            Ordering::Less => out.push(bt),
            Ordering::Equal => {
                let s = field.add(&a[i].coeff, &bt.coeff);
                if !field.is_zero(&s) {
                    out.push(Term {
                        coeff: s,
                        mono: bt.mono,
                    });
                }
                i += 1;
            }
        }
    }
    out.extend(a[i..].iter().cloned());
    out
}

impl<F: Field> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Eq for Poly<F> {}

impl<F: Field> Hash for Poly<F> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl<'a, F: Field> $trait<&'a Poly<F>> for &'a Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: &'a Poly<F>) -> Poly<F> {
                self.$checked(rhs).expect(concat!("Poly::", stringify!($method)))
            }
        }
        impl<F: Field> $trait<Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, F: Field> $trait<&'a Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: &'a Poly<F>) -> Poly<F> {
                (&self).$method(rhs)
            }
        }
        impl<'a, F: Field> $trait<Poly<F>> for &'a Poly<F> {
            type Output = Poly<F>;
            fn $method(self, rhs: Poly<F>) -> Poly<F> {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        let minus_one = self.field().neg(&self.field().one());
        self.scale(&minus_one)
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}
