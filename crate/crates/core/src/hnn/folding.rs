//! Stallings folding of finitely generated subgroups of free groups.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::groups::Word;

/// Slot of the half-edge labelled by generator `g` (or its inverse).
fn slot(g: usize, inverse: bool) -> usize {
    2 * g + usize::from(inverse)
}

/// A folded labelled graph with base vertex `0`. `out[v][slot]` is the
/// endpoint of the half-edge leaving `v` with that label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FoldedGraph {
    ngens: usize,
    out: Vec<Vec<Option<usize>>>,
}

impl FoldedGraph {
    /// The core graph of `<words>` in the free group on `ngens` generators,
    /// folded, trimmed, and numbered canonically.
    pub fn of_subgroup(ngens: usize, words: &[Word]) -> Self {
        // positive edges (u, g, v)
        let mut edges: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
        let mut nv = 1;
        for w in words {
            let letters: Vec<(usize, bool)> = w.letters().collect();
            if letters.is_empty() {
                continue;
            }
            let mut cur = 0;
            for (i, &(g, inv)) in letters.iter().enumerate() {
                let next = if i + 1 == letters.len() {
                    0
                } else {
                    nv += 1;
                    nv - 1
                };
                edges.insert(if inv { (next, g, cur) } else { (cur, g, next) });
                cur = next;
            }
        }
        let edges = fold(edges);
        let mut g = FoldedGraph::from_edges(ngens, &edges);
        g.trim();
        g.canonical()
    }

    fn from_edges(ngens: usize, edges: &BTreeSet<(usize, usize, usize)>) -> Self {
        let n = edges.iter().map(|&(u, _, v)| u.max(v) + 1).max().unwrap_or(1).max(1);
        let mut out = vec![vec![None; 2 * ngens]; n];
        for &(u, g, v) in edges {
            out[u][slot(g, false)] = Some(v);
            out[v][slot(g, true)] = Some(u);
        }
        FoldedGraph { ngens, out }
    }

    /// Repeatedly deletes non-base vertices of degree at most one, and any
    /// vertex not connected to the base.
    fn trim(&mut self) {
        let n = self.out.len();
        let mut alive = vec![true; n];
        let reach = self.reachable();
        for v in 0..n {
            alive[v] = reach.contains(&v);
        }
        loop {
            let mut changed = false;
            for v in 1..n {
                if !alive[v] {
                    continue;
                }
                let degree = self.out[v].iter().filter(|e| e.is_some_and(|w| alive[w])).count();
                if degree <= 1 {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for v in 0..n {
            for e in self.out[v].iter_mut() {
                if e.is_some_and(|w| !alive[w]) || !alive[v] {
                    *e = None;
                }
            }
        }
    }

    fn reachable(&self) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([0]);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for w in self.out[v].iter().flatten() {
                if seen.insert(*w) {
                    queue.push_back(*w);
                }
            }
        }
        seen
    }

    /// Renumbers vertices in breadth-first order from the base, following
    /// labels in slot order, and drops unreachable vertices.
    fn canonical(&self) -> Self {
        let mut order = vec![0];
        let mut index = BTreeMap::from([(0, 0)]);
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            for w in self.out[v].iter().flatten() {
                if !index.contains_key(w) {
                    index.insert(*w, order.len());
                    order.push(*w);
                }
            }
            i += 1;
        }
        let out = order.iter().map(|&v| self.out[v].iter().map(|e| e.map(|w| index[&w])).collect()).collect();
        FoldedGraph { ngens: self.ngens, out }
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn num_vertices(&self) -> usize {
        self.out.len()
    }

    pub fn edge(&self, v: usize, g: usize, inverse: bool) -> Option<usize> {
        self.out[v][slot(g, inverse)]
    }

    /// Endpoint of reading `w` from `start`, if the path stays in the graph.
    pub fn read_from(&self, start: usize, w: &Word) -> Option<usize> {
        let mut v = start;
        for (g, inv) in w.letters() {
            v = self.edge(v, g, inv)?;
        }
        Some(v)
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.read_from(0, w) == Some(0)
    }

    /// Every vertex has every half-edge: the subgroup has finite index equal
    /// to the number of vertices.
    pub fn is_covering(&self) -> bool {
        self.out.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// The single-vertex graph with a loop for every generator, i.e. the
    /// subgroup is the whole free group.
    pub fn is_rose(&self) -> bool {
        self.num_vertices() == 1 && self.is_covering()
    }

    pub fn index(&self) -> Option<usize> {
        self.is_covering().then_some(self.num_vertices())
    }
}

fn fold(mut edges: BTreeSet<(usize, usize, usize)>) -> BTreeSet<(usize, usize, usize)> {
    loop {
        let mut seen: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
        let mut merge = None;
        for &(u, g, v) in &edges {
            if let Some(&w) = seen.get(&(u, g, false)) {
                if w != v {
                    merge = Some((w, v));
                    break;
                }
            }
            seen.insert((u, g, false), v);
            if let Some(&w) = seen.get(&(v, g, true)) {
                if w != u {
                    merge = Some((w, u));
                    break;
                }
            }
            seen.insert((v, g, true), u);
        }
        let Some((a, b)) = merge else { return edges };
        let (keep, gone) = (a.min(b), a.max(b));
        let rename = |x: usize| if x == gone { keep } else { x };
        edges = edges.into_iter().map(|(u, g, v)| (rename(u), g, rename(v))).collect();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_generator() {
        let g = FoldedGraph::of_subgroup(1, &[Word::power(0, 2)]);
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.index(), Some(2));
        assert!(g.contains(&Word::power(0, 4)));
        assert!(!g.contains(&Word::power(0, 3)));
    }

    #[test]
    fn generating_set_gives_rose() {
        let g = FoldedGraph::of_subgroup(2, &[Word::generator(0), Word::generator(1)]);
        assert!(g.is_rose());
        let g = FoldedGraph::of_subgroup(2, &[Word::from_signed(&[1, 2]), Word::generator(1)]);
        assert!(g.is_rose());
    }

    #[test]
    fn folding_is_canonical() {
        let a = FoldedGraph::of_subgroup(2, &[Word::from_signed(&[1, 2, -1]), Word::power(0, 2)]);
        let b = FoldedGraph::of_subgroup(2, &[Word::power(0, -2), Word::from_signed(&[1, -2, -1]), Word::power(0, 2)]);
        assert_eq!(a, b);
        assert!(!a.is_covering());
    }

    #[test]
    fn conjugate_subgroup_trims_to_core_at_base() {
        let g = FoldedGraph::of_subgroup(2, &[Word::from_signed(&[2, 1, -2])]);
        assert!(g.contains(&Word::from_signed(&[2, 1, 1, -2])));
        assert!(!g.contains(&Word::generator(0)));
    }
}
