//! Dense exponent vectors and term orders.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::PolyError;

pub type Exponent = u16;

type ExpVec = SmallVec<[Exponent; 16]>;

/// A monomial `x_0^{e_0} ... x_{n-1}^{e_{n-1}}` stored densely.
///
/// The total degree and a support bitmask are cached; the mask makes most
/// failed divisibility tests a single AND.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: ExpVec,
    degree: u32,
    mask: u64,
}

fn support_mask(exps: &[Exponent]) -> u64 {
    exps.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |m, (i, _)| m | 1u64 << (i % 64))
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
            mask: 0,
        }
    }

    pub fn from_exponents(exps: &[Exponent]) -> Self {
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            mask: support_mask(exps),
            exps: SmallVec::from_slice(exps),
        }
    }

    /// The monomial `x_var^exp`.
    pub fn var(nvars: usize, var: usize, exp: Exponent) -> Self {
        let mut exps: ExpVec = SmallVec::from_elem(0, nvars);
        exps[var] = exp;
        Monomial::from_exponents(&exps)
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> Exponent {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.degree > other.degree {
            return false;
        }
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let mut exps = ExpVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(PolyError::ExponentOverflow)?);
        }
        Ok(Monomial {
            exps,
            degree: self.degree + other.degree,
            mask: self.mask | other.mask,
        })
    }

    /// Product; panics on exponent overflow (beyond 65535).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("exponent overflow")
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let exps: ExpVec = self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect();
        Monomial::from_exponents(&exps)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: ExpVec = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_exponents(&exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        if self.exps.len() <= 64 {
            return self.mask & other.mask == 0;
        }
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// A monomial order. Variable `0` is the largest variable in every order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    DegRevLex,
    /// Compares the first `elim` variables with `inner`, then the rest with
    /// `inner`. Any monomial containing one of the first `elim` variables is
    /// larger than every monomial free of them.
    Block {
        elim: usize,
        inner: Box<TermOrder>,
    },
}

impl TermOrder {
    pub fn block(elim: usize, inner: TermOrder) -> Self {
        TermOrder::Block {
            elim,
            inner: Box::new(inner),
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::DegRevLex => "degrevlex".into(),
            TermOrder::Block { elim, inner } => format!("block({elim},{})", inner.name()),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::DegRevLex => a.degree.cmp(&b.degree).then_with(|| revlex_tail(&a.exps, &b.exps)),
            _ => self.cmp_slices(&a.exps, &b.exps),
        }
    }

    fn cmp_slices(&self, a: &[Exponent], b: &[Exponent]) -> Ordering {
        match self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::DegRevLex => {
                let da: u32 = a.iter().map(|&e| e as u32).sum();
                let db: u32 = b.iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| revlex_tail(a, b))
            }
            TermOrder::Block { elim, inner } => {
                let k = (*elim).min(a.len());
                inner
                    .cmp_slices(&a[..k], &b[..k])
                    .then_with(|| inner.cmp_slices(&a[k..], &b[k..]))
            }
        }
    }
}

impl std::str::FromStr for TermOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "lex" => Ok(TermOrder::Lex),
            "degrevlex" | "grevlex" => Ok(TermOrder::DegRevLex),
            other => Err(format!("unknown term order `{other}`")),
        }
    }
}

// Equal degrees assumed: the monomial with the smaller exponent in the last
// differing variable is the larger one.
fn revlex_tail(a: &[Exponent], b: &[Exponent]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}
