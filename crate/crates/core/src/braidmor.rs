//! Braid morphisms between Bott-Samelson bimodules and their matrices.
//!
//! Each braid move has a degree-0 bimodule map on its window sending `1^⊗`
//! to `1^⊗`. Adjacent moves are pinned by one more generator: for the window
//! `[a, a+1, a]`, `1 ⊗ x_a ⊗ 1 ⊗ 1 ↦ (x_a + x_{a+1})·1^⊗ - 1^⊗·x_{a+2}`, and
//! for `[a, a-1, a]`, `1 ⊗ x_{a+1} ⊗ 1 ⊗ 1 ↦ 1^⊗·(x_a + x_{a+1}) - x_{a-1}·1^⊗`.
//! Images of the remaining window monomials are obtained by rewriting them as
//! two-sided combinations of these generators.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;

use crate::bsbimod::{add_term, basis_slots, normalize_into, BsElement, Mask};
use crate::poly::Polynomial;
use crate::symgroup::{move_between, BraidMove, MoveKind, Word};
use crate::{Error, Result};

/// Images of every window basis monomial under one local braid morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalImageTable {
    kind: MoveKind,
    rank: u8,
    images: Vec<BsElement>,
}

impl LocalImageTable {
    pub fn derive(kind: MoveKind, rank: u8) -> Result<Self> {
        let top = kind.max_letter();
        if top >= rank || kind.source().letters().contains(&0) {
            return Err(Error::LetterOutOfRange { letter: top, rank });
        }
        let src = kind.source();
        let images = Mask::all(src.len())
            .map(|m| {
                let slots = basis_slots(src.letters(), rank, m, &Polynomial::one(rank));
                local_image(kind, rank, &slots)
            })
            .collect();
        Ok(LocalImageTable { kind, rank, images })
    }

    pub fn kind(&self) -> MoveKind {
        self.kind
    }

    pub fn source(&self) -> Word {
        self.kind.source()
    }

    pub fn target(&self) -> Word {
        self.kind.target()
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn image(&self, mask: Mask) -> &BsElement {
        &self.images[mask.0 as usize]
    }

    /// `(window mask, image)` for all `2^m` window monomials.
    pub fn images(&self) -> impl Iterator<Item = (Mask, &BsElement)> {
        self.images.iter().enumerate().map(|(m, e)| (Mask(m as u32), e))
    }

    /// Image of an arbitrary pure tensor over the source window.
    pub fn apply_tensor(&self, slots: &[Polynomial]) -> Result<BsElement> {
        let k = self.kind.window_len();
        if slots.len() != k + 1 {
            return Err(Error::SlotCount { expected: k + 1, got: slots.len() });
        }
        Ok(local_image(self.kind, self.rank, slots))
    }
}

/// Rewrites a pure tensor over the source window into generators and maps it.
fn local_image(kind: MoveKind, rank: u8, slots: &[Polynomial]) -> BsElement {
    let target = kind.target();
    let one = Polynomial::one(rank);
    let unit = BsElement::one_tensor(target.clone(), rank).expect("window letters checked");
    match kind {
        MoveKind::Distant(_, b) => {
            // p1 = α + β x_b with α, β ∈ R^{s_b}; x_b ∈ R^{s_a}.
            let (alpha, beta) = slots[1].split(b);
            let xb = Polynomial::var(rank, b);
            let mut out = BTreeMap::new();
            let t = target.letters();
            normalize_into(t, &[slots[0].clone(), one.clone(), &alpha * &slots[2]], Mask::EMPTY, &mut out);
            normalize_into(t, &[&slots[0] * &xb, one, &beta * &slots[2]], Mask::EMPTY, &mut out);
            BsElement::from_coeffs(target, rank, out).expect("normal form")
        }
        MoveKind::AdjacentUp(a) | MoveKind::AdjacentDown(a) => {
            let (a, y, gen_image) = adjacent_generator(kind, a, rank, &unit);
            let dy = y.demazure(a);
            let split_y = |p: &Polynomial| {
                let beta = &p.demazure(a) * &dy;
                let alpha = p - &(&beta * &y);
                (alpha, beta)
            };
            // p2 = α + β y: α, β slide right, y slides left into slot 1.
            let (alpha, beta) = split_y(&slots[2]);
            let mut out = BsElement::zero(target.clone(), rank).expect("window letters checked");
            for (q, r) in [(slots[1].clone(), &alpha * &slots[3]), (&slots[1] * &y, &beta * &slots[3])] {
                if r.is_zero() {
                    continue;
                }
                // q = α' + β' y with α', β' sliding left into slot 0.
                let (a1, b1) = split_y(&q);
                for (l, g) in [(&slots[0] * &a1, &unit), (&slots[0] * &b1, &gen_image)] {
                    if l.is_zero() {
                        continue;
                    }
                    let term = g.left_mul(&l).right_mul(&r);
                    out = out.checked_add(&term).expect("same target window");
                }
            }
            out
        }
    }
}

/// `(a, y, f(1 ⊗ y ⊗ 1 ⊗ 1))` for the window `[a, b, a]`; `∂_a y = ±1` and
/// `y` is `s_b`-invariant.
fn adjacent_generator(kind: MoveKind, i: u8, rank: u8, unit: &BsElement) -> (u8, Polynomial, BsElement) {
    let x = |j: u8| Polynomial::var(rank, j);
    match kind {
        MoveKind::AdjacentUp(a) => {
            let img = unit
                .left_mul(&(&x(a) + &x(a + 1)))
                .checked_sub(&unit.right_mul(&x(a + 2)))
                .expect("same target window");
            (a, x(a), img)
        }
        _ => {
            let a = i + 1;
            let img = unit
                .right_mul(&(&x(a) + &x(a + 1)))
                .checked_sub(&unit.left_mul(&x(a - 1)))
                .expect("same target window");
            (a, x(a + 1), img)
        }
    }
}

/// Local tables for every braid move available in a given rank.
#[derive(Clone, Debug)]
pub struct BraidEngine {
    rank: u8,
    tables: BTreeMap<MoveKind, LocalImageTable>,
}

impl BraidEngine {
    pub fn new(rank: u8) -> Result<Self> {
        if !(2..=crate::poly::MAX_VARS).contains(&rank) {
            return Err(Error::UnsupportedRank(rank));
        }
        let mut tables = BTreeMap::new();
        for i in 1..rank {
            for j in 1..rank {
                if i.abs_diff(j) >= 2 {
                    let k = MoveKind::Distant(i, j);
                    tables.insert(k, LocalImageTable::derive(k, rank)?);
                }
            }
            if i + 1 < rank {
                for k in [MoveKind::AdjacentUp(i), MoveKind::AdjacentDown(i)] {
                    tables.insert(k, LocalImageTable::derive(k, rank)?);
                }
            }
        }
        Ok(BraidEngine { rank, tables })
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn table(&self, kind: MoveKind) -> Result<&LocalImageTable> {
        self.tables.get(&kind).ok_or(Error::LetterOutOfRange { letter: kind.max_letter(), rank: self.rank })
    }

    /// `Id ⊗ f ⊗ Id` applied to `e`, with `f` the local morphism of `mv`.
    pub fn apply_edge(&self, e: &BsElement, mv: BraidMove) -> Result<BsElement> {
        if e.rank() != self.rank {
            return Err(Error::RankMismatch { left: e.rank(), right: self.rank });
        }
        let target = mv.apply(e.word())?;
        let table = self.table(mv.kind)?;
        let mut out = BTreeMap::new();
        for (mask, c) in e.coeffs() {
            self.apply_basis(e.word(), table, mv.position, *mask, c, &mut out);
        }
        Ok(BsElement::from_parts(target, self.rank, out))
    }

    fn apply_basis(
        &self,
        word: &Word,
        table: &LocalImageTable,
        p: usize,
        mask: Mask,
        c: &Polynomial,
        out: &mut BTreeMap<Mask, Polynomial>,
    ) {
        let m = table.kind.window_len();
        let left_word = &word.letters()[..p];
        let right_bits = Mask(mask.0 & !((1u32 << (p + m)) - 1));
        let left_slots = basis_slots(left_word, self.rank, Mask(mask.0 & ((1 << p) - 1)), c);
        for (nu, d) in table.image(mask.window(p, m)).coeffs() {
            let mut slots = left_slots.clone();
            let last = slots.len() - 1;
            slots[last] = &slots[last] * d;
            let extra = Mask(right_bits.0 | nu.0 << p);
            if p == 0 {
                add_term(out, extra, slots.pop().expect("slot 0"));
            } else {
                normalize_into(left_word, &slots, extra, out);
            }
        }
    }

    /// Matrix of `Id ⊗ f ⊗ Id` on the normal-form basis of `B_word`.
    pub fn edge_matrix(&self, word: &Word, mv: BraidMove) -> Result<MorphismMatrix> {
        let target = mv.apply(word)?;
        let table = self.table(mv.kind)?;
        let one = Polynomial::one(self.rank);
        let cols = Mask::all(word.len())
            .map(|c| {
                let mut col = BTreeMap::new();
                self.apply_basis(word, table, mv.position, c, &one, &mut col);
                col
            })
            .collect();
        Ok(MorphismMatrix { domain: word.clone(), codomain: target, rank: self.rank, cols })
    }

    /// Product of the edge matrices along consecutive words; a single word
    /// gives the identity.
    pub fn path_morphism(&self, path: &[Word]) -> Result<MorphismMatrix> {
        let first = path.first().ok_or_else(|| Error::InvalidPath("[]".to_string(), "empty path".to_string()))?;
        let mut acc = MorphismMatrix::identity(first.clone(), self.rank);
        for pair in path.windows(2) {
            let mv = move_between(&pair[0], &pair[1]).ok_or_else(|| {
                Error::InvalidPath(
                    alloc::format!("{}->{}", pair[0], pair[1]),
                    "not related by one braid move".to_string(),
                )
            })?;
            acc = acc.then(&self.edge_matrix(&pair[0], mv)?)?;
        }
        Ok(acc)
    }
}

/// A left-`R`-linear map `B_domain → B_codomain` in normal-form bases:
/// column `c` holds the image of basis element `c`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct MorphismMatrix {
    domain: Word,
    codomain: Word,
    rank: u8,
    cols: Vec<BTreeMap<Mask, Polynomial>>,
}

impl MorphismMatrix {
    pub fn identity(word: Word, rank: u8) -> Self {
        let cols = Mask::all(word.len())
            .map(|m| {
                let mut col = BTreeMap::new();
                col.insert(m, Polynomial::one(rank));
                col
            })
            .collect();
        MorphismMatrix { domain: word.clone(), codomain: word, rank, cols }
    }

    pub fn domain(&self) -> &Word {
        &self.domain
    }

    pub fn codomain(&self) -> &Word {
        &self.codomain
    }

    pub fn rank(&self) -> u8 {
        self.rank
    }

    pub fn column(&self, c: Mask) -> &BTreeMap<Mask, Polynomial> {
        &self.cols[c.0 as usize]
    }

    pub fn entry(&self, row: Mask, col: Mask) -> Polynomial {
        self.cols[col.0 as usize].get(&row).cloned().unwrap_or_else(|| Polynomial::zero(self.rank))
    }

    /// Nonzero entries as `(row, col, value)`, sorted by row then column.
    pub fn entries(&self) -> Vec<(Mask, Mask, &Polynomial)> {
        let mut v: Vec<_> = self
            .cols
            .iter()
            .enumerate()
            .flat_map(|(c, col)| col.iter().map(move |(r, p)| (*r, Mask(c as u32), p)))
            .collect();
        v.sort_by_key(|&(r, c, _)| (r, c));
        v
    }

    pub fn nonzero_count(&self) -> usize {
        self.cols.iter().map(BTreeMap::len).sum()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &MorphismMatrix) -> Result<MorphismMatrix> {
        if self.codomain != next.domain {
            return Err(Error::ShapeMismatch(self.codomain.clone(), next.domain.clone()));
        }
        let cols = self
            .cols
            .iter()
            .map(|col| {
                let mut out = BTreeMap::new();
                for (r, a) in col {
                    for (s, b) in &next.cols[r.0 as usize] {
                        add_term(&mut out, *s, a * b);
                    }
                }
                out
            })
            .collect();
        Ok(MorphismMatrix { domain: self.domain.clone(), codomain: next.codomain.clone(), rank: self.rank, cols })
    }

    pub fn apply(&self, e: &BsElement) -> Result<BsElement> {
        if e.word() != &self.domain {
            return Err(Error::ShapeMismatch(e.word().clone(), self.domain.clone()));
        }
        let mut out = BTreeMap::new();
        for (c, p) in e.coeffs() {
            for (r, q) in &self.cols[c.0 as usize] {
                add_term(&mut out, *r, p * q);
            }
        }
        Ok(BsElement::from_parts(self.codomain.clone(), self.rank, out))
    }

    /// Every entry `[r][c]` is zero or homogeneous of degree
    /// `2·(|c| - |r|)`.
    pub fn is_homogeneous(&self) -> bool {
        self.cols.iter().enumerate().all(|(c, col)| {
            col.iter().all(|(r, p)| {
                let d = 2 * (Mask(c as u32).popcount() as i64 - r.popcount() as i64);
                d >= 0 && p.degree() == Some(d as u32)
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && *self == MorphismMatrix::identity(self.domain.clone(), self.rank)
    }
}

/// Entrywise equality of two morphisms with the same shape.
pub fn matrices_equal(a: &MorphismMatrix, b: &MorphismMatrix) -> Result<bool> {
    if a.domain != b.domain {
        return Err(Error::ShapeMismatch(a.domain.clone(), b.domain.clone()));
    }
    if a.codomain != b.codomain {
        return Err(Error::ShapeMismatch(a.codomain.clone(), b.codomain.clone()));
    }
    Ok(a.cols == b.cols)
}
