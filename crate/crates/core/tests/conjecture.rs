//! Brute-force cross-checks of the path-morphism search against direct
//! enumeration and direct evaluation.

use std::collections::BTreeMap;

use rexcalc_core::braidmor::MorphismMatrix;
use rexcalc_core::bsbimod::{BsElement, Mask};
use rexcalc_core::fpc::{
    apply_rex_path, check_fpc_on, check_refined_conjecture, table_words, FpcOptions, PathMorphisms, DEFAULT_BUDGET,
};
use rexcalc_core::rexgraph::{enumerate_complete_paths, PathGraph};
use rexcalc_core::symgroup::{longest_element, Word};

fn all_walks(pm: &PathMorphisms, max_len: usize) -> Vec<Vec<usize>> {
    let g = pm.graph();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
    while let Some(p) = stack.pop() {
        if p.len() < max_len {
            for &u in g.neighbors(*p.last().unwrap()) {
                let mut q = p.clone();
                q.push(u);
                stack.push(q);
            }
        }
        out.push(p);
    }
    out
}

/// Path matrices of all walks, sharing prefixes.
fn walk_matrices(pm: &PathMorphisms, walks: &[Vec<usize>]) -> BTreeMap<Vec<usize>, MorphismMatrix> {
    let mut sorted = walks.to_vec();
    sorted.sort_by_key(Vec::len);
    let mut out: BTreeMap<Vec<usize>, MorphismMatrix> = BTreeMap::new();
    for p in sorted {
        let m = if p.len() == 1 {
            pm.path_matrix(&p).unwrap()
        } else {
            let prefix = &out[&p[..p.len() - 1]];
            prefix.then(&pm.path_matrix(&p[p.len() - 2..]).unwrap()).unwrap()
        };
        out.insert(p, m);
    }
    out
}

fn all_agree<'a>(groups: impl Iterator<Item = ((usize, usize), &'a MorphismMatrix)>) -> bool {
    let mut first: BTreeMap<(usize, usize), &MorphismMatrix> = BTreeMap::new();
    let mut ok = true;
    for (k, m) in groups {
        ok &= *first.entry(k).or_insert(m) == m;
    }
    ok
}

#[test]
fn search_matches_enumeration_on_s4() {
    for w in table_words(4) {
        let pm = PathMorphisms::of_word(&w, 4).unwrap();
        let g = pm.graph();
        let n = g.vertex_count();
        let max_len = if n == 8 { 10 } else { 8 };
        let mut pairs = Vec::new();
        for a in 0..n {
            for z in 0..n {
                for p in enumerate_complete_paths(g, a, z, max_len) {
                    pairs.push(((a, z), pm.path_matrix(&p).unwrap()));
                }
            }
        }
        let brute = all_agree(pairs.iter().map(|(k, m)| (*k, m)));
        let dp = check_fpc_on(&pm, &FpcOptions::new(max_len)).unwrap();
        assert_eq!(dp.holds(), brute, "{w}");
        assert_eq!(dp.holds(), w != "12321".parse::<Word>().unwrap());
    }
}

#[test]
fn refined_conjecture_by_enumeration() {
    for (rank, max_len) in [(3u8, 8usize), (4, 9)] {
        let pm = PathMorphisms::of_word(&longest_element(rank).unwrap(), rank).unwrap();
        let (s, t) = pm.graph().source_sink().unwrap();
        let walks: Vec<Vec<usize>> =
            all_walks(&pm, max_len).into_iter().filter(|p| p.contains(&s) && p.contains(&t)).collect();
        let mats = walk_matrices(&pm, &all_walks(&pm, max_len));
        let brute = all_agree(walks.iter().map(|p| ((p[0], *p.last().unwrap()), &mats[p])));
        assert!(brute, "rank {rank}");
        assert_eq!(check_refined_conjecture(rank, max_len, DEFAULT_BUDGET).unwrap().holds(), brute);
    }
}

#[test]
fn idempotent_is_proper_on_s3() {
    // pushed edge by edge through the expanded graph, without matrices
    let pm = PathMorphisms::of_word(&"121".parse().unwrap(), 3).unwrap();
    let words: Vec<Word> = ["121", "212", "121"].iter().map(|s| s.parse().unwrap()).collect();
    let moved = Mask::all(3).any(|m| {
        let b = BsElement::basis(words[0].clone(), 3, m).unwrap();
        apply_rex_path(pm.engine(), &words, &b).unwrap() != b
    });
    assert!(moved);
}

#[test]
fn simplify_is_sound() {
    for (w, rank, max_len) in [("121321", 4u8, 10usize), ("23121", 4, 9), ("12312", 4, 9)] {
        let pm = PathMorphisms::of_word(&w.parse().unwrap(), rank).unwrap();
        let g = pm.graph();
        let n = g.vertex_count();
        let mut checked = 0;
        for a in 0..n {
            for z in 0..n {
                for p in enumerate_complete_paths(g, a, z, max_len) {
                    if !g.has_direct_subpath(&p) {
                        continue;
                    }
                    let q = g.simplify_path(&p).unwrap();
                    assert_eq!(pm.path_matrix(&q).unwrap(), pm.path_matrix(&p).unwrap(), "{w}: {p:?} -> {q:?}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 0, "{w}");
    }
}
