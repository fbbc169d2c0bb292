//! Elements of Bott-Samelson bimodules `B_w = R ⊗_{R^{s_1}} R ⊗ ... ⊗_{R^{s_k}} R`.
//!
//! As a left `R`-module `B_w` is free on the monomials
//! `1 ⊗ x_{w_1}^{ε_1} ⊗ ... ⊗ x_{w_k}^{ε_k}` for `ε ∈ {0,1}^k`, because `R` is
//! free over `R^{s_i}` with basis `{1, x_i}`. An element is stored as the map
//! `ε ↦ left coefficient`.
//!
//! A tensor `p_0 ⊗ p_1 ⊗ ... ⊗ p_k` has `k + 1` slots; factor `j` (0-based)
//! of the word sits between slot `j` and slot `j + 1`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::Polynomial;
use crate::symgroup::Word;
use crate::{Error, Result};

/// Basis index: bit `j` set means slot `j + 1` carries `x_{w_{j+1}}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Debug)]
pub struct Mask(pub u32);

impl Mask {
    pub const EMPTY: Mask = Mask(0);

    pub fn has(self, factor: usize) -> bool {
        self.0 >> factor & 1 == 1
    }

    pub fn with(self, factor: usize) -> Mask {
        Mask(self.0 | 1 << factor)
    }

    pub fn popcount(self) -> u32 {
        self.0.count_ones()
    }

    /// Bits `start..start + len`, shifted down to position 0.
    pub fn window(self, start: usize, len: usize) -> Mask {
        Mask(self.0 >> start & ((1 << len) - 1))
    }

    /// `ε_1 ε_2 ... ε_k` as a string of `0`/`1`.
    pub fn to_bits(self, k: usize) -> String {
        (0..k).map(|j| if self.has(j) { '1' } else { '0' }).collect()
    }

    pub fn from_bits(bits: &str) -> Option<Mask> {
        if bits.len() > 31 {
            return None;
        }
        bits.chars().enumerate().try_fold(Mask::EMPTY, |m, (j, c)| match c {
            '0' => Some(m),
            '1' => Some(m.with(j)),
            _ => None,
        })
    }

    pub fn all(k: usize) -> impl Iterator<Item = Mask> {
        (0..1u32 << k).map(Mask)
    }
}

/// Degree of the basis element `ε` in `B_w` for a word of length `k`: each
/// dot contributes 2 and each factor carries the shift `(1)`.
pub fn degree(mask: Mask, k: usize) -> i32 {
    2 * mask.popcount() as i32 - k as i32
}

fn check_word(word: &Word, rank: u8) -> Result<()> {
    match word.letters().iter().find(|&&l| l == 0 || l >= rank) {
        Some(&letter) => Err(Error::LetterOutOfRange { letter, rank }),
        None if word.len() > 31 => Err(Error::PositionOutOfRange { position: word.len(), len: 31 }),
        None => Ok(()),
    }
}

/// Normalizes `slots[0] ⊗ ... ⊗ slots[k]` over `word` and adds the result
/// (with `extra` or-ed into every mask) to `out`.
///
/// Works right to left: the polynomial in slot `j` is split as
/// `π0 + π1 x_{w_j}` with `s_{w_j}`-invariant parts, which then slide into
/// slot `j - 1`.
pub(crate) fn normalize_into(word: &[u8], slots: &[Polynomial], extra: Mask, out: &mut BTreeMap<Mask, Polynomial>) {
    debug_assert_eq!(slots.len(), word.len() + 1);
    let k = word.len();
    let mut state: BTreeMap<Mask, Polynomial> = BTreeMap::new();
    state.insert(Mask::EMPTY, slots[k].clone());
    for j in (1..=k).rev() {
        let letter = word[j - 1];
        let left = &slots[j - 1];
        let mut next: BTreeMap<Mask, Polynomial> = BTreeMap::new();
        for (mask, q) in state {
            let (pi0, pi1) = q.split(letter);
            for (m, part) in [(mask, pi0), (mask.with(j - 1), pi1)] {
                if part.is_zero() {
                    continue;
                }
                let v = left * &part;
                add_term(&mut next, m, v);
            }
        }
        state = next;
    }
    for (m, p) in state {
        add_term(out, Mask(m.0 | extra.0), p);
    }
}

pub(crate) fn add_term(map: &mut BTreeMap<Mask, Polynomial>, m: Mask, p: Polynomial) {
    if p.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(cur) => {
            *cur += &p;
            if cur.is_zero() {
                map.remove(&m);
            }
        }
        None => {
            map.insert(m, p);
        }
    }
}

/// Slots `[c, x_{w_1}^{ε_1}, ..., x_{w_k}^{ε_k}]` of a scaled basis element.
pub(crate) fn basis_slots(word: &[u8], rank: u8, mask: Mask, coeff: &Polynomial) -> Vec<Polynomial> {
    let mut slots = Vec::with_capacity(word.len() + 1);
    slots.push(coeff.clone());
    for (j, &l) in word.iter().enumerate() {
        slots.push(if mask.has(j) { Polynomial::var(rank, l) } else { Polynomial::one(rank) });
    }
    slots
}

/// An element of `B_w` in left normal form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BsElement {
    word: Word,
    rank: u8,
    coeffs: BTreeMap<Mask, Polynomial>,
}

impl BsElement {
    pub fn zero(word: Word, rank: u8) -> Result<Self> {
        check_word(&word, rank)?;
        Ok(BsElement { word, rank, coeffs: BTreeMap::new() })
    }

    /// The generator `1 ⊗ 1 ⊗ ... ⊗ 1`.
    pub fn one_tensor(word: Word, rank: u8) -> Result<Self> {
        Self::basis(word, rank, Mask::EMPTY)
    }

    pub fn basis(word: Word, rank: u8, mask: Mask) -> Result<Self> {
        check_word(&word, rank)?;
        let mut coeffs = BTreeMap::new();
        if mask.0 >> word.len() != 0 {
            return Err(Error::PositionOutOfRange { position: 31 - mask.0.leading_zeros() as usize, len: word.len() });
        }
        coeffs.insert(mask, Polynomial::one(rank));
        Ok(BsElement { word, rank, coeffs })
    }

    /// Builds an element from explicit normal-form coefficients.
    pub fn from_coeffs(word: Word, rank: u8, coeffs: impl IntoIterator<Item = (Mask, Polynomial)>) -> Result<Self> {
        let mut e = Self::zero(word, rank)?;
        for (m, p) in coeffs {
            if p.rank() != rank {
                return Err(Error::RankMismatch { left: p.rank(), right: rank });
            }
            if m.0 >> e.word.len() != 0 {
                return Err(Error::PositionOutOfRange { position: e.word.len(), len: e.word.len() });
            }
            add_term(&mut e.coeffs, m, p);
        }
        Ok(e)
    }

    /// Normal form of the pure tensor `slots[0] ⊗ slots[1] ⊗ ... ⊗ slots[k]`.
    pub fn from_tensor(word: Word, rank: u8, slots: &[Polynomial]) -> Result<Self> {
        check_word(&word, rank)?;
        if slots.len() != word.len() + 1 {
            return Err(Error::SlotCount { expected: word.len() + 1, got: slots.len() });
        }
        if let Some(p) = slots.iter().find(|p| p.rank() != rank) {
            return Err(Error::RankMismatch { left: p.rank(), right: rank });
        }
        let mut coeffs = BTreeMap::new();
        normalize_into(word.letters(), slots, Mask::EMPTY, &mut coeffs);
        Ok(BsElement { word, rank, coeffs })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    /// Number of tensor factors.
    pub fn factor_count(&self) -> usize {
        self.word.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero coefficients in ascending mask order.
    pub fn coeffs(&self) -> &BTreeMap<Mask, Polynomial> {
        &self.coeffs
    }

    pub fn coefficient(&self, mask: Mask) -> Polynomial {
        self.coeffs.get(&mask).cloned().unwrap_or_else(|| Polynomial::zero(self.rank))
    }

    pub(crate) fn from_parts(word: Word, rank: u8, coeffs: BTreeMap<Mask, Polynomial>) -> Self {
        BsElement { word, rank, coeffs }
    }

    fn check_same(&self, other: &BsElement) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        if self.word != other.word {
            return Err(Error::ShapeMismatch(self.word.clone(), other.word.clone()));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &BsElement) -> Result<BsElement> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, p) in &other.coeffs {
            add_term(&mut out.coeffs, *m, p.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &BsElement) -> Result<BsElement> {
        self.checked_add(&other.left_mul(&-Polynomial::one(self.rank)))
    }

    /// Left action: multiplies every coefficient.
    pub fn left_mul(&self, p: &Polynomial) -> BsElement {
        assert_eq!(p.rank(), self.rank, "polynomial rank mismatch");
        let coeffs = self.coeffs.iter().map(|(m, c)| (*m, p * c)).filter(|(_, c)| !c.is_zero()).collect();
        BsElement { word: self.word.clone(), rank: self.rank, coeffs }
    }

    /// Right action: multiplies the last slot and renormalizes.
    pub fn right_mul(&self, p: &Polynomial) -> BsElement {
        assert_eq!(p.rank(), self.rank, "polynomial rank mismatch");
        if self.word.is_empty() {
            return self.left_mul(p);
        }
        let letters = self.word.letters();
        let k = letters.len();
        let mut coeffs = BTreeMap::new();
        for (m, c) in &self.coeffs {
            let mut slots = basis_slots(letters, self.rank, *m, c);
            slots[k] = &slots[k] * p;
            normalize_into(letters, &slots, Mask::EMPTY, &mut coeffs);
        }
        BsElement { word: self.word.clone(), rank: self.rank, coeffs }
    }

    /// Image under the multiplication map `R ⊗_{R^s} R → R` on factor
    /// `position`: merges the two slots around it and drops the letter.
    pub fn dot_cap(&self, position: usize) -> Result<BsElement> {
        let k = self.word.len();
        if position >= k {
            return Err(Error::PositionOutOfRange { position, len: k });
        }
        let word = self.word.without(position);
        let mut coeffs = BTreeMap::new();
        for (m, c) in &self.coeffs {
            let mut slots = basis_slots(self.word.letters(), self.rank, *m, c);
            let right = slots.remove(position + 1);
            slots[position] = &slots[position] * &right;
            normalize_into(word.letters(), &slots, Mask::EMPTY, &mut coeffs);
        }
        Ok(BsElement { word, rank: self.rank, coeffs })
    }

    /// Whether every coefficient is homogeneous and all terms share one degree.
    pub fn homogeneous_degree(&self) -> Option<i32> {
        let mut deg = None;
        for (m, c) in &self.coeffs {
            let d = c.degree()? as i32 + degree(*m, self.word.len());
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

impl fmt::Display for BsElement {
    /// E.g. `(x1 + x2)*[00] - [10]` in `B_1 B_3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.coeffs.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*[{}]", m.to_bits(self.word.len()))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B[{}]{{{self}}}", self.word)
    }
}
