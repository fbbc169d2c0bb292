//! Permutations of `{1..n}`, words in the simple reflections `s_i = (i i+1)`,
//! braid moves, and enumeration of reduced expressions.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// A word in the simple reflections. Letter `i` stands for `s_i = (i i+1)`,
/// so letters are 1-based while positions into the word are 0-based.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: Vec<u8>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest letter, or 0 for the empty word.
    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Smallest rank `n` such that the word lives in `S_n`.
    pub fn min_rank(&self) -> u8 {
        (self.max_letter() + 1).max(2)
    }

    /// The statistic `N`: the sum of all letters.
    pub fn n_statistic(&self) -> u32 {
        self.0.iter().map(|&l| u32::from(l)).sum()
    }

    pub fn to_perm(&self, rank: u8) -> Result<Permutation> {
        word_to_perm(self, rank)
    }

    pub fn is_reduced(&self, rank: u8) -> Result<bool> {
        is_reduced(self, rank)
    }

    /// The word with the letter at `position` removed.
    pub fn without(&self, position: usize) -> Word {
        let mut v = self.0.clone();
        v.remove(position);
        Word(v)
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl<const N: usize> From<[u8; N]> for Word {
    fn from(v: [u8; N]) -> Self {
        Word(v.to_vec())
    }
}

/// Single-digit letters are written concatenated (`12321`), anything else
/// comma-separated (`1,10,2`). The empty word prints as `e`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        let compact = self.0.iter().all(|&l| l < 10);
        for (k, l) in self.0.iter().enumerate() {
            if !compact && k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWordError;

impl fmt::Display for ParseWordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("words are digit strings like 12321, comma lists like 1,2,10, or e")
    }
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word::empty());
        }
        let letters: Option<Vec<u8>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).and_then(|d| u8::try_from(d).ok())).collect()
        };
        match letters {
            Some(v) if v.iter().all(|&l| l > 0) => Ok(Word(v)),
            _ => Err(ParseWordError),
        }
    }
}

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: u8) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Builds a permutation from its one-line notation, checking bijectivity.
    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &v in &images {
            let v = usize::from(v);
            if v == 0 || v > n || seen[v - 1] {
                return None;
            }
            seen[v - 1] = true;
        }
        Some(Permutation { images })
    }

    pub fn rank(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Image of `i` (1-based).
    pub fn apply(&self, i: u8) -> u8 {
        self.images[usize::from(i) - 1]
    }

    /// `self ∘ other`, i.e. `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.rank(), other.rank());
        Permutation { images: other.images.iter().map(|&j| self.apply(j)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[usize::from(v) - 1] = (i + 1) as u8;
        }
        Permutation { images: inv }
    }

    /// Coxeter length, i.e. the number of inversions.
    pub fn length(&self) -> usize {
        let n = self.images.len();
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| self.images[i] > self.images[j]).count()
    }

    /// Right multiplication by `s_i`: swaps the entries in positions `i`, `i+1`.
    fn mul_simple(&mut self, i: u8) {
        let i = usize::from(i);
        self.images.swap(i - 1, i);
    }

    /// A reduced word for the permutation, found by repeatedly stripping the
    /// leftmost right descent.
    pub fn reduced_word(&self) -> Word {
        let mut p = self.clone();
        let mut rev = Vec::new();
        while let Some(i) = (1..p.images.len()).find(|&i| p.images[i - 1] > p.images[i]) {
            p.mul_simple(i as u8);
            rev.push(i as u8);
        }
        rev.reverse();
        Word(rev)
    }

    /// Every permutation of `{1..n}` in lexicographic one-line order.
    pub fn all(n: u8) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

/// The local rewrite performed by a braid move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MoveKind {
    /// `[i, j] -> [j, i]` with `|i - j| >= 2`.
    Distant(u8, u8),
    /// `[i, i+1, i] -> [i+1, i, i+1]`.
    AdjacentUp(u8),
    /// `[i+1, i, i+1] -> [i, i+1, i]`.
    AdjacentDown(u8),
}

impl MoveKind {
    /// Letters the move expects to find.
    pub fn source(self) -> Word {
        match self {
            MoveKind::Distant(i, j) => Word(alloc::vec![i, j]),
            MoveKind::AdjacentUp(i) => Word(alloc::vec![i, i + 1, i]),
            MoveKind::AdjacentDown(i) => Word(alloc::vec![i + 1, i, i + 1]),
        }
    }

    /// Letters the move writes.
    pub fn target(self) -> Word {
        self.reverse().source()
    }

    pub fn reverse(self) -> MoveKind {
        match self {
            MoveKind::Distant(i, j) => MoveKind::Distant(j, i),
            MoveKind::AdjacentUp(i) => MoveKind::AdjacentDown(i),
            MoveKind::AdjacentDown(i) => MoveKind::AdjacentUp(i),
        }
    }

    pub fn window_len(self) -> usize {
        match self {
            MoveKind::Distant(..) => 2,
            _ => 3,
        }
    }

    pub fn is_distant(self) -> bool {
        matches!(self, MoveKind::Distant(..))
    }

    pub fn max_letter(self) -> u8 {
        self.source().max_letter()
    }
}

/// A braid move applied at a 0-based window position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidMove {
    pub position: usize,
    pub kind: MoveKind,
}

impl BraidMove {
    pub fn reverse(self) -> BraidMove {
        BraidMove { position: self.position, kind: self.kind.reverse() }
    }

    pub fn applies_to(&self, w: &Word) -> bool {
        let src = self.kind.source();
        w.0.get(self.position..self.position + src.len()) == Some(src.letters())
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if !self.applies_to(w) {
            return Err(Error::InapplicableMove(w.clone()));
        }
        let mut out = w.0.clone();
        let tgt = self.kind.target();
        out[self.position..self.position + tgt.len()].copy_from_slice(tgt.letters());
        Ok(Word(out))
    }
}

impl fmt::Display for BraidMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            MoveKind::Distant(i, j) => write!(f, "Distant({i},{j})@{}", self.position),
            MoveKind::AdjacentUp(i) => write!(f, "AdjacentUp({i})@{}", self.position),
            MoveKind::AdjacentDown(i) => write!(f, "AdjacentDown({i})@{}", self.position),
        }
    }
}

fn check_letters(w: &Word, rank: u8) -> Result<()> {
    match w.0.iter().find(|&&l| l == 0 || l >= rank) {
        Some(&letter) => Err(Error::LetterOutOfRange { letter, rank }),
        None => Ok(()),
    }
}

/// Product of the simple transpositions of `w`, read left to right.
pub fn word_to_perm(w: &Word, rank: u8) -> Result<Permutation> {
    check_letters(w, rank)?;
    let mut p = Permutation::identity(rank);
    for &l in &w.0 {
        p.mul_simple(l);
    }
    Ok(p)
}

pub fn is_reduced(w: &Word, rank: u8) -> Result<bool> {
    Ok(word_to_perm(w, rank)?.length() == w.len())
}

/// The inductive reduced word `1, 121, 121321, ...` of the longest element.
pub fn longest_element(rank: u8) -> Result<Word> {
    if rank < 2 {
        return Err(Error::UnsupportedRank(rank));
    }
    let mut v = Vec::new();
    for top in 1..rank {
        v.extend((1..=top).rev());
    }
    Ok(Word(v))
}

/// All words obtained from `w` by one braid relation, with the move used.
pub fn braid_moves(w: &Word) -> Vec<(BraidMove, Word)> {
    let l = &w.0;
    let mut out = Vec::new();
    for p in 0..l.len() {
        let kind = if p + 1 < l.len() && l[p].abs_diff(l[p + 1]) >= 2 {
            Some(MoveKind::Distant(l[p], l[p + 1]))
        } else {
            None
        };
        let adj = if p + 2 < l.len() && l[p] == l[p + 2] {
            if l[p + 1] == l[p] + 1 {
                Some(MoveKind::AdjacentUp(l[p]))
            } else if l[p + 1] + 1 == l[p] {
                Some(MoveKind::AdjacentDown(l[p + 1]))
            } else {
                None
            }
        } else {
            None
        };
        for kind in [kind, adj].into_iter().flatten() {
            let mv = BraidMove { position: p, kind };
            let next = mv.apply(w).expect("move was matched against the word");
            out.push((mv, next));
        }
    }
    out
}

/// The braid move turning `from` into `to`, if they are one move apart.
pub fn move_between(from: &Word, to: &Word) -> Option<BraidMove> {
    braid_moves(from).into_iter().find(|(_, w)| w == to).map(|(m, _)| m)
}

/// All reduced expressions of `p`, by breadth-first braid-move closure.
pub fn reduced_words(p: &Permutation) -> BTreeSet<Word> {
    let seed = p.reduced_word();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(seed.clone());
    queue.push_back(seed);
    while let Some(w) = queue.pop_front() {
        for (_, next) in braid_moves(&w) {
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

pub fn n_statistic(w: &Word) -> u32 {
    w.n_statistic()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn word_to_perm_examples() {
        assert_eq!(word_to_perm(&Word::empty(), 4).unwrap(), Permutation::identity(4));
        assert_eq!(word_to_perm(&w("121"), 3).unwrap().images(), &[3, 2, 1]);
        assert_eq!(word_to_perm(&w("12321"), 4).unwrap().images(), &[4, 2, 3, 1]);
        assert_eq!(word_to_perm(&w("14"), 4), Err(Error::LetterOutOfRange { letter: 4, rank: 4 }));
    }

    #[test]
    fn word_to_perm_is_left_to_right_product() {
        // s1 s2 as functions: s2 acts first.
        let p = word_to_perm(&w("12"), 3).unwrap();
        let s1 = word_to_perm(&w("1"), 3).unwrap();
        let s2 = word_to_perm(&w("2"), 3).unwrap();
        assert_eq!(p, s1.compose(&s2));
    }

    #[test]
    fn reducedness() {
        assert!(!is_reduced(&w("11"), 2).unwrap());
        assert!(is_reduced(&w("12321"), 4).unwrap());
        assert!(is_reduced(&w("21321"), 4).unwrap());
        assert!(is_reduced(&w("1213"), 4).unwrap());
        assert!(!is_reduced(&w("1212"), 3).unwrap());
    }

    #[test]
    fn longest_elements() {
        assert_eq!(longest_element(2).unwrap(), w("1"));
        assert_eq!(longest_element(3).unwrap(), w("121"));
        assert_eq!(longest_element(4).unwrap(), w("121321"));
        assert_eq!(longest_element(1), Err(Error::UnsupportedRank(1)));
        for n in 2..=6u8 {
            let l = longest_element(n).unwrap();
            assert_eq!(l.len(), usize::from(n) * usize::from(n - 1) / 2);
            assert!(is_reduced(&l, n).unwrap());
        }
    }

    #[test]
    fn braid_move_examples() {
        assert_eq!(braid_moves(&w("121")), vec![(BraidMove { position: 0, kind: MoveKind::AdjacentUp(1) }, w("212"))]);
        assert_eq!(braid_moves(&w("24")), vec![(BraidMove { position: 0, kind: MoveKind::Distant(2, 4) }, w("42"))]);
        let n: Vec<Word> = braid_moves(&w("12321")).into_iter().map(|(_, x)| x).collect();
        assert_eq!(n, vec![w("13231")]);
        let down = braid_moves(&w("212"));
        assert_eq!(down[0].0.kind, MoveKind::AdjacentDown(1));
        assert_eq!(down[0].1, w("121"));
    }

    #[test]
    fn reduced_word_counts() {
        let id = Permutation::identity(4);
        assert_eq!(reduced_words(&id).into_iter().collect::<Vec<_>>(), vec![Word::empty()]);
        let p = word_to_perm(&w("12321"), 4).unwrap();
        let expected: BTreeSet<Word> =
            ["12321", "13231", "31231", "31213", "13213", "32123"].iter().map(|s| w(s)).collect();
        assert_eq!(reduced_words(&p), expected);
        assert_eq!(reduced_words(&word_to_perm(&w("121"), 3).unwrap()).len(), 2);
        assert_eq!(reduced_words(&word_to_perm(&w("121321"), 4).unwrap()).len(), 16);
    }

    #[test]
    fn n_statistic_examples() {
        assert_eq!(n_statistic(&w("132")), 6);
        assert_eq!(n_statistic(&Word::empty()), 0);
        assert_eq!(n_statistic(&w("24")), n_statistic(&w("42")));
        assert_eq!(n_statistic(&w("121")), 4);
        assert_eq!(n_statistic(&w("212")), 5);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("1,10,2").letters(), &[1, 10, 2]);
        assert_eq!(w("1,10,2").to_string(), "1,10,2");
        assert_eq!(w("12321").to_string(), "12321");
        assert_eq!(Word::empty().to_string(), "e");
        assert!("102".parse::<Word>().is_err());
        assert!("1a".parse::<Word>().is_err());
    }

    #[test]
    fn permutations_of_s4() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        for p in &all {
            assert_eq!(p.reduced_word().len(), p.length());
            assert_eq!(word_to_perm(&p.reduced_word(), 4).unwrap(), *p);
            assert_eq!(p.compose(&p.inverse()), Permutation::identity(4));
        }
    }
}
