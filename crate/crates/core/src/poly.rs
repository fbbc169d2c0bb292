//! Exact multivariate polynomials in `x_1..x_n` over the rationals.
//!
//! Monomials are ordered graded-lexicographically with `x_1 > x_2 > ...`.
//! Each variable has degree 2, so the degree of `x^a` is `2 * |a|`.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::symgroup::Permutation;
use crate::{Error, Rational, Result};

/// Largest supported number of variables (and thus rank of `S_n`).
pub const MAX_VARS: u8 = 8;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u8; MAX_VARS as usize]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS as usize]);

    pub fn from_exponents(exps: &[u8]) -> Self {
        assert!(exps.len() <= usize::from(MAX_VARS));
        let mut m = [0u8; MAX_VARS as usize];
        m[..exps.len()].copy_from_slice(exps);
        Monomial(m)
    }

    /// `x_i` (1-based).
    pub fn var(i: u8) -> Self {
        let mut m = Monomial::ONE;
        m.0[usize::from(i) - 1] = 1;
        m
    }

    pub fn exponents(&self) -> &[u8] {
        &self.0
    }

    /// Exponent of `x_i` (1-based).
    pub fn exponent(&self, i: u8) -> u8 {
        self.0[usize::from(i) - 1]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0) {
            *a = a.checked_add(b).expect("exponent overflow");
        }
        Monomial(m)
    }

    fn swap(&self, i: u8) -> Monomial {
        let mut m = self.0;
        m.swap(usize::from(i) - 1, usize::from(i));
        Monomial(m)
    }

    fn highest_var(&self) -> u8 {
        self.0.iter().rposition(|&e| e > 0).map_or(0, |p| p as u8 + 1)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_monomial(f, self)
    }
}

fn write_monomial(f: &mut impl fmt::Write, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (k, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        write!(f, "x{}", k + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    if first {
        f.write_char('1')?;
    }
    Ok(())
}

/// A polynomial in `x_1..x_rank`.
///
/// Terms are kept sorted in increasing graded-lex order with no zero
/// coefficients, so derived equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Polynomial {
    rank: u8,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(rank: u8) -> Self {
        assert!(rank <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        Polynomial { rank, terms: Vec::new() }
    }

    pub fn one(rank: u8) -> Self {
        Self::constant(rank, Rational::ONE)
    }

    pub fn constant(rank: u8, c: Rational) -> Self {
        Self::term(rank, Monomial::ONE, c)
    }

    pub fn term(rank: u8, m: Monomial, c: Rational) -> Self {
        assert!(m.highest_var() <= rank, "monomial uses a variable beyond x{rank}");
        let mut p = Self::zero(rank);
        if !c.is_zero() {
            p.terms.push((m, c));
        }
        p
    }

    /// The variable `x_i` (1-based).
    pub fn var(rank: u8, i: u8) -> Self {
        assert!(i >= 1 && i <= rank, "x{i} is not a variable of rank {rank}");
        Self::term(rank, Monomial::var(i), Rational::ONE)
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(rank: u8, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Self::zero(rank);
        p.terms = terms.into_iter().collect();
        for (m, _) in &p.terms {
            assert!(m.highest_var() <= rank, "monomial uses a variable beyond x{rank}");
        }
        p.canonicalize();
        p
    }

    fn canonicalize(&mut self) {
        self.terms.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.drain(..) {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        self.terms = out;
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Monomial::ONE && self.terms[0].1.is_one()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.binary_search_by(|(t, _)| t.cmp(m)).map_or(Rational::ZERO, |k| self.terms[k].1.clone())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Rational)> {
        self.terms.last()
    }

    /// Graded degree (`deg x_i = 2`) if the polynomial is nonzero and homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let (first, rest) = self.terms.split_first()?;
        let d = first.0.total_degree();
        rest.iter().all(|(m, _)| m.total_degree() == d).then_some(2 * d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    fn check_rank(&self, other: &Polynomial) -> Result<()> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(Error::RankMismatch { left: self.rank, right: other.rank })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_rank(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_rank(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            let ord = match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (None, None) => break,
            };
            match ord {
                Ordering::Less => out.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (m, c) = b.next().unwrap();
                    out.push((*m, if negate { -c } else { c.clone() }));
                }
                Ordering::Equal => {
                    let (m, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let c = if negate { x - y } else { x + y };
                    if !c.is_zero() {
                        out.push((*m, c));
                    }
                }
            }
        }
        Polynomial { rank: self.rank, terms: out }
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.rank);
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                terms.push((m1.mul(m2), c1 * c2));
            }
        }
        let mut p = Polynomial { rank: self.rank, terms };
        p.canonicalize();
        p
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.rank);
        }
        Polynomial { rank: self.rank, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Multiplies by a single monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        assert!(m.highest_var() <= self.rank);
        // multiplying by a monomial preserves graded-lex order
        Polynomial { rank: self.rank, terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect() }
    }

    /// The action of the simple reflection `s_i`: swaps `x_i` and `x_{i+1}`.
    pub fn swap_vars(&self, i: u8) -> Polynomial {
        assert!(i >= 1 && i < self.rank, "s{i} is not a simple reflection of S_{}", self.rank);
        let mut p =
            Polynomial { rank: self.rank, terms: self.terms.iter().map(|(m, c)| (m.swap(i), c.clone())).collect() };
        p.canonicalize();
        p
    }

    /// The action of a permutation: `x_i -> x_{σ(i)}`.
    pub fn act(&self, sigma: &Permutation) -> Result<Polynomial> {
        if sigma.rank() != self.rank {
            return Err(Error::RankMismatch { left: sigma.rank(), right: self.rank });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = [0u8; MAX_VARS as usize];
            for i in 1..=self.rank {
                e[usize::from(sigma.apply(i)) - 1] = m.exponent(i);
            }
            (Monomial(e), c.clone())
        });
        Ok(Polynomial::from_terms(self.rank, terms))
    }

    /// Whether the polynomial is fixed by `s_i`.
    pub fn is_invariant(&self, i: u8) -> bool {
        self.terms.iter().all(|(m, c)| {
            m.exponent(i) == m.exponent(i + 1) || {
                let sm = m.swap(i);
                self.coefficient(&sm) == *c
            }
        })
    }

    /// Demazure operator `∂_i(p) = (p - s_i p) / (x_i - x_{i+1})`.
    ///
    /// Computed monomial by monomial: for `a > b`,
    /// `∂(x_i^a x_{i+1}^b) = x_i^b x_{i+1}^b (x_i^{d-1} + x_i^{d-2} x_{i+1} + ... + x_{i+1}^{d-1})`
    /// with `d = a - b`, and the sign flips when `a < b`.
    pub fn demazure(&self, i: u8) -> Polynomial {
        assert!(i >= 1 && i < self.rank, "s{i} is not a simple reflection of S_{}", self.rank);
        let (ia, ib) = (usize::from(i) - 1, usize::from(i));
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let (a, b) = (m.0[ia], m.0[ib]);
            if a == b {
                continue;
            }
            let (d, c) = if a > b { (a - b, c.clone()) } else { (b - a, -c) };
            let mut base = m.0;
            base[ia] = a.min(b);
            base[ib] = a.min(b);
            for k in 0..d {
                let mut e = base;
                e[ia] += d - 1 - k;
                e[ib] += k;
                terms.push((Monomial(e), c.clone()));
            }
        }
        Polynomial::from_terms(self.rank, terms)
    }

    /// Splits `p = π0 + π1 * x_i` with `π0`, `π1` both `s_i`-invariant.
    pub fn split(&self, i: u8) -> (Polynomial, Polynomial) {
        let pi1 = self.demazure(i);
        let pi0 = self - &pi1.mul_monomial(&Monomial::var(i));
        (pi0, pi1)
    }

    /// Canonical text form, leading term first, e.g. `x1^2 - 2*x1*x3 + 1/2`.
    pub fn to_canonical_string(&self) -> String {
        use fmt::Write;
        let mut s = String::new();
        write!(s, "{self}").unwrap();
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if *m == Monomial::ONE {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({self})", self.rank)
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    /// Panics on rank mismatch; see [`Polynomial::checked_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial rank mismatch")
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial rank mismatch")
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial rank mismatch")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self = &*self - rhs;
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { rank: self.rank, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symgroup::{word_to_perm, Word};
    use alloc::vec;
    use proptest::prelude::*;

    fn x(i: u8) -> Polynomial {
        Polynomial::var(4, i)
    }

    fn c(v: i64) -> Polynomial {
        Polynomial::constant(4, Rational::from_i64(v))
    }

    /// Long division by the monic (in `x_i`) linear form `x_i - x_{i+1}`.
    /// Independent of the closed-form Demazure formula.
    fn divide_by_root(p: &Polynomial, i: u8) -> Polynomial {
        let rank = p.rank();
        let deg = p.terms().iter().map(|(m, _)| m.exponent(i)).max().unwrap_or(0);
        // coefficients of x_i^k as polynomials free of x_i
        let mut coeffs = vec![Polynomial::zero(rank); usize::from(deg) + 1];
        for (m, c) in p.terms() {
            let mut e = m.0;
            let k = e[usize::from(i) - 1];
            e[usize::from(i) - 1] = 0;
            coeffs[usize::from(k)] += &Polynomial::term(rank, Monomial(e), c.clone());
        }
        let y = Polynomial::var(rank, i + 1);
        let mut q = vec![Polynomial::zero(rank); usize::from(deg)];
        let mut carry = Polynomial::zero(rank);
        for k in (1..=usize::from(deg)).rev() {
            carry = &coeffs[k] + &(&y * &carry);
            q[k - 1] = carry.clone();
        }
        let rem = &coeffs[0] + &(&y * &carry);
        assert!(rem.is_zero(), "division was not exact");
        let xi = Polynomial::var(rank, i);
        let mut out = Polynomial::zero(rank);
        let mut pow = Polynomial::one(rank);
        for qk in &q {
            out += &(qk * &pow);
            pow = &pow * &xi;
        }
        out
    }

    fn demazure_oracle(p: &Polynomial, i: u8) -> Polynomial {
        divide_by_root(&(p - &p.swap_vars(i)), i)
    }

    #[test]
    fn arithmetic_examples() {
        assert!((&x(1) + &(-&x(1))).is_zero());
        assert_eq!(&(&x(1) + &x(2)) * &(&x(1) - &x(2)), &(&x(1) * &x(1)) - &(&x(2) * &x(2)));
        let half_x3 = x(3).scale(&Rational::new(1, 2));
        assert_eq!(half_x3.scale(&Rational::from_i64(2)), x(3));
        assert_eq!(x(1).checked_add(&Polynomial::var(3, 1)), Err(Error::RankMismatch { left: 4, right: 3 }));
    }

    #[test]
    fn action_examples() {
        let s1 = word_to_perm(&Word::from([1]), 4).unwrap();
        let s2 = word_to_perm(&Word::from([2]), 4).unwrap();
        assert_eq!(x(1).act(&s1).unwrap(), x(2));
        assert_eq!((&x(1) + &x(2)).act(&s1).unwrap(), &x(1) + &x(2));
        assert_eq!((&x(1) * &x(2)).act(&s2).unwrap(), &x(1) * &x(3));
        assert_eq!(x(1).swap_vars(1), x(2));
    }

    #[test]
    fn invariance_examples() {
        assert!((&x(1) + &x(2)).is_invariant(1));
        assert!(!x(1).is_invariant(1));
        assert!(x(3).is_invariant(1));
        assert!((&(&x(1) * &x(1)) + &(&x(2) * &x(2))).is_invariant(1));
    }

    #[test]
    fn demazure_examples() {
        assert_eq!(x(1).demazure(1), c(1));
        assert!((&x(1) + &x(2)).demazure(1).is_zero());
        let sq = &x(1) * &x(1);
        assert_eq!(demazure_oracle(&sq, 1), &x(1) + &x(2));
        assert_eq!(sq.demazure(1), &x(1) + &x(2));
        assert_eq!(x(2).demazure(1), c(-1));
    }

    #[test]
    fn display_is_graded_lex_leading_first() {
        let p = &(&(&x(1) * &x(1)) - &(&x(1) * &x(3)).scale(&Rational::from_i64(2))) + &c(3);
        assert_eq!(p.to_string(), "x1^2 - 2*x1*x3 + 3");
        assert_eq!((-&x(2)).to_string(), "-x2");
        assert_eq!(x(3).scale(&Rational::new(1, 2)).to_string(), "1/2*x3");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
        assert_eq!((&x(2) + &x(1)).to_string(), "x1 + x2");
    }

    #[test]
    fn degree_is_doubled() {
        assert_eq!(x(1).degree(), Some(2));
        assert_eq!((&x(1) * &x(2)).degree(), Some(4));
        assert_eq!(c(5).degree(), Some(0));
        assert_eq!((&x(1) + &c(1)).degree(), None);
        assert_eq!(Polynomial::zero(4).degree(), None);
        assert!(Polynomial::zero(4).is_homogeneous());
    }

    fn arb_poly(rank: u8) -> impl Strategy<Value = Polynomial> {
        let term = (prop::collection::vec(0u8..4, usize::from(rank)), -5i64..=5);
        prop::collection::vec(term, 0..7).prop_map(move |ts| {
            Polynomial::from_terms(
                rank,
                ts.into_iter().map(|(e, k)| (Monomial::from_exponents(&e), Rational::from_i64(k))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn demazure_splitting(p in arb_poly(4), i in 1u8..4) {
            let d = p.demazure(i);
            prop_assert_eq!(&d, &demazure_oracle(&p, i));
            prop_assert!(d.is_invariant(i));
            let (pi0, pi1) = p.split(i);
            prop_assert!(pi0.is_invariant(i));
            prop_assert!(pi1.is_invariant(i));
            prop_assert_eq!(&pi0 + &pi1.mul_monomial(&Monomial::var(i)), p);
            prop_assert!(d.demazure(i).is_zero());
        }

        #[test]
        fn action_is_a_group_action(p in arb_poly(4), a in 0usize..24, b in 0usize..24) {
            let all = Permutation::all(4);
            let (u, v) = (&all[a], &all[b]);
            let lhs = p.act(&u.compose(v)).unwrap();
            let rhs = p.act(v).unwrap().act(u).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ring_axioms(p in arb_poly(3), q in arb_poly(3), r in arb_poly(3)) {
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert!((&p - &p).is_zero());
        }
    }
}
