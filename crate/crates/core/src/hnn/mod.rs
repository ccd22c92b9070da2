//! HNN extensions `<B, t | t a t^-1 = gamma(a), a in A>` over a free base,
//! ascending detection by folding, and kernel witnesses built from the
//! coset modules `Z[X] -> Z[Y]`.

mod folding;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::groups::{GroupError, GroupPresentation, JsonPresentation, JsonWord, Word};

pub use folding::FoldedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HnnError {
    #[error("{assoc} associated generators but {images} images")]
    CountMismatch { assoc: usize, images: usize },
    #[error("coset enumeration needs a free base group")]
    BaseNotFree,
    #[error("iota misses element {0} of Y")]
    NotSurjective(usize),
    #[error("map sends an element outside its target ({0})")]
    MapOutOfRange(String),
    #[error("invalid HNN input: {0}")]
    Json(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Data of an HNN extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnData {
    pub base: GroupPresentation,
    pub assoc_gens: Vec<Word>,
    pub gamma_images: Vec<Word>,
    pub stable_letter: String,
}

#[derive(Serialize, Deserialize)]
struct JsonHnn {
    base: JsonPresentation,
    assoc: Vec<JsonWord>,
    images: Vec<JsonWord>,
    #[serde(default)]
    stable: Option<String>,
}

impl HnnData {
    pub fn new(base: GroupPresentation, assoc_gens: Vec<Word>, gamma_images: Vec<Word>) -> Result<Self, HnnError> {
        if assoc_gens.len() != gamma_images.len() {
            return Err(HnnError::CountMismatch { assoc: assoc_gens.len(), images: gamma_images.len() });
        }
        let n = base.num_generators();
        for w in assoc_gens.iter().chain(&gamma_images) {
            if let Some(g) = w.max_generator().filter(|&g| g >= n) {
                return Err(GroupError::UnknownGenerator(g).into());
            }
        }
        Ok(HnnData { base, assoc_gens, gamma_images, stable_letter: "t".into() })
    }

    /// Parses `{"base": {"gens", "rels"}, "assoc": [words], "images": [words]}`.
    pub fn from_json(text: &str) -> Result<Self, HnnError> {
        let j: JsonHnn = serde_json::from_str(text).map_err(|e| HnnError::Json(e.to_string()))?;
        let base = j.base.to_presentation()?;
        let gens = base.generators().to_vec();
        let words = |ws: &[JsonWord]| ws.iter().map(|w| w.to_word(&gens)).collect::<Result<Vec<_>, _>>();
        let mut h = HnnData::new(base, words(&j.assoc)?, words(&j.images)?)?;
        if let Some(s) = j.stable {
            h.stable_letter = s;
        }
        Ok(h)
    }

    pub fn to_json(&self) -> Value {
        let gens = self.base.generators();
        let words = |ws: &[Word]| ws.iter().map(|w| JsonWord::from_word(w, gens)).collect::<Vec<_>>();
        json!({
            "base": JsonPresentation::from_presentation(&self.base),
            "assoc": words(&self.assoc_gens),
            "images": words(&self.gamma_images),
            "stable": self.stable_letter,
        })
    }

    /// The subgroup graph of `A` in the free base.
    pub fn subgroup_graph(&self) -> Result<FoldedGraph, HnnError> {
        if self.base.num_relators() > 0 {
            return Err(HnnError::BaseNotFree);
        }
        Ok(FoldedGraph::of_subgroup(self.base.num_generators(), &self.assoc_gens))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ascending {
    Ascending,
    NotAscending,
    /// The base has relators, where `A = B` is not decided.
    Unknown,
}

/// `A = B`, decided by folding when the base is free.
pub fn is_ascending_free_base(h: &HnnData) -> Ascending {
    match h.subgroup_graph() {
        Ok(g) if g.is_rose() => Ascending::Ascending,
        Ok(_) => Ascending::NotAscending,
        Err(_) => Ascending::Unknown,
    }
}

/// Finite truncation of the coset sets `X` (cosets of `A`) and `Y` (cosets
/// of `B`), with the inclusion-induced `iota: X -> Y` and a self-map `gamma`
/// of `X` lifting the `gamma`-induced map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCosetAction {
    pub x_labels: Vec<String>,
    pub y_labels: Vec<String>,
    pub iota: Vec<usize>,
    pub gamma: Vec<usize>,
    pub depth: usize,
    /// Enumeration stopped at the depth bound with cosets still open.
    pub truncated: bool,
}

impl TruncatedCosetAction {
    pub fn new(ny: usize, iota: Vec<usize>, gamma: Vec<usize>, depth: usize) -> Result<Self, HnnError> {
        let nx = iota.len();
        if gamma.len() != nx {
            return Err(HnnError::MapOutOfRange("gamma must be defined on all of X".into()));
        }
        if let Some(&bad) = iota.iter().find(|&&y| y >= ny) {
            return Err(HnnError::MapOutOfRange(format!("iota value {bad}")));
        }
        if let Some(&bad) = gamma.iter().find(|&&x| x >= nx) {
            return Err(HnnError::MapOutOfRange(format!("gamma value {bad}")));
        }
        Ok(TruncatedCosetAction {
            x_labels: (0..nx).map(|i| format!("x{i}")).collect(),
            y_labels: (0..ny).map(|i| format!("y{i}")).collect(),
            iota,
            gamma,
            depth,
            truncated: false,
        })
    }

    pub fn nx(&self) -> usize {
        self.iota.len()
    }

    pub fn ny(&self) -> usize {
        self.y_labels.len()
    }

    /// `iota` extended linearly to `Z[X] -> Z[Y]`.
    pub fn apply_iota(&self, f: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.ny()];
        for (x, &c) in f.iter().enumerate() {
            out[self.iota[x]] += c;
        }
        out
    }

    /// `gamma` extended linearly to `Z[X] -> Z[X]`.
    pub fn apply_gamma(&self, f: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.nx()];
        for (x, &c) in f.iter().enumerate() {
            out[self.gamma[x]] += c;
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x": self.x_labels,
            "y": self.y_labels,
            "iota": self.iota,
            "gamma": self.gamma,
            "depth": self.depth,
            "truncated": self.truncated,
        })
    }
}

/// Coefficient vectors `f_0, ..., f_depth` over `X` of the formal series
/// `sum f_i t^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSeries {
    pub terms: Vec<Vec<i64>>,
}

impl WitnessSeries {
    pub fn to_string_with(&self, labels: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, f) in self.terms.iter().enumerate() {
            let mut body = String::new();
            for (x, &c) in f.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let sign = if c < 0 { "-" } else { "+" };
                let mag = if c.abs() == 1 { labels[x].clone() } else { format!("{}*{}", c.abs(), labels[x]) };
                if body.is_empty() {
                    body = if c < 0 { format!("-{mag}") } else { mag };
                } else {
                    body.push_str(&format!(" {sign} {mag}"));
                }
            }
            if !body.is_empty() {
                parts.push(format!("({body})*t^{i}"));
            }
        }
        parts.join(" + ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    /// `iota` is injective: this construction yields no kernel element.
    NoWitness,
    Witness(WitnessSeries),
}

/// A nonzero `f_0` in `ker iota` and lifts `f_{i+1}` with
/// `iota(f_{i+1}) = iota(gamma(f_i))`, taking `f_{i+1} = gamma(f_i)`.
pub fn witness_series(c: &TruncatedCosetAction) -> Result<WitnessOutcome, HnnError> {
    let mut hit = vec![false; c.ny()];
    for &y in &c.iota {
        hit[y] = true;
    }
    if let Some(y) = hit.iter().position(|h| !h) {
        return Err(HnnError::NotSurjective(y));
    }
    let mut first: BTreeMap<usize, usize> = BTreeMap::new();
    let mut pair = None;
    for (x, &y) in c.iota.iter().enumerate() {
        if let Some(&x0) = first.get(&y) {
            pair = Some((x0, x));
            break;
        }
        first.insert(y, x);
    }
    let Some((i, j)) = pair else { return Ok(WitnessOutcome::NoWitness) };
    let mut f = vec![0; c.nx()];
    f[i] = 1;
    f[j] = -1;
    let mut terms = vec![f];
    for _ in 0..c.depth {
        let next = c.apply_gamma(terms.last().expect("nonempty"));
        terms.push(next);
    }
    Ok(WitnessOutcome::Witness(WitnessSeries { terms }))
}

/// `iota(f_0) = 0`, `f_0 != 0` and `iota(f_{i+1}) = iota(gamma(f_i))`.
pub fn check_witness(c: &TruncatedCosetAction, s: &WitnessSeries) -> bool {
    let Some(f0) = s.terms.first() else { return false };
    f0.iter().any(|&v| v != 0)
        && c.apply_iota(f0).iter().all(|&v| v == 0)
        && s.terms.windows(2).all(|w| c.apply_iota(&w[1]) == c.apply_iota(&c.apply_gamma(&w[0])))
}

/// Enumerates the right cosets `A w` of `A` in the free base for words `w` of
/// length at most `depth`, using the folded subgroup graph extended by fresh
/// tree vertices where edges are missing. `Y` is the single coset of `B`.
///
/// `gamma` is the coset action of the substitution sending each associated
/// generator that is a single base letter to its image, when that
/// substitution preserves `A` and stays within the enumerated cosets;
/// otherwise every coset is sent to `A`. Since `Y` is a point, either choice
/// satisfies the lifting equation.
pub fn build_truncated_action(h: &HnnData, depth: usize) -> Result<TruncatedCosetAction, HnnError> {
    let graph = h.subgroup_graph()?;
    let ngens = h.base.num_generators();
    // Schreier graph on enumerated cosets; core vertices keep their numbers.
    let mut edges: Vec<Vec<Option<usize>>> =
        (0..graph.num_vertices()).map(|v| (0..2 * ngens).map(|s| graph.edge(v, s / 2, s % 2 == 1)).collect()).collect();
    let mut reps: Vec<Option<Word>> = vec![None; graph.num_vertices()];
    reps[0] = Some(Word::identity());
    let mut dist: Vec<Option<usize>> = vec![None; graph.num_vertices()];
    dist[0] = Some(0);
    let mut order = vec![0];
    let mut queue = VecDeque::from([0]);
    let mut truncated = false;
    while let Some(v) = queue.pop_front() {
        let d = dist[v].expect("visited");
        for s in 0..2 * ngens {
            let (g, inv) = (s / 2, s % 2 == 1);
            let target = match edges[v][s] {
                Some(w) => w,
                None if d < depth => {
                    let w = edges.len();
                    edges.push(vec![None; 2 * ngens]);
                    edges[w][s ^ 1] = Some(v);
                    edges[v][s] = Some(w);
                    reps.push(None);
                    dist.push(None);
                    w
                }
                None => {
                    truncated = true;
                    continue;
                }
            };
            if dist[target].is_none() {
                if d >= depth {
                    truncated = true;
                    continue;
                }
                dist[target] = Some(d + 1);
                let mut rep = reps[v].clone().expect("visited");
                rep.push(g, if inv { -1 } else { 1 });
                reps[target] = Some(rep);
                order.push(target);
                queue.push_back(target);
            }
        }
    }
    let index: BTreeMap<usize, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let read = |w: &Word| -> Option<usize> {
        let mut v = 0;
        for (g, inv) in w.letters() {
            v = edges[v][2 * g + usize::from(inv)]?;
        }
        index.get(&v).copied()
    };
    let subst: Vec<Word> = (0..ngens)
        .map(|g| {
            h.assoc_gens.iter().position(|a| *a == Word::generator(g)).map_or_else(|| Word::generator(g), |i| h.gamma_images[i].clone())
        })
        .collect();
    let preserves = h.assoc_gens.iter().all(|a| graph.contains(&a.substitute(&subst)));
    let reps: Vec<Word> = order.iter().map(|&v| reps[v].clone().expect("visited")).collect();
    let gamma: Vec<usize> = reps.iter().map(|w| if preserves { read(&w.substitute(&subst)).unwrap_or(0) } else { 0 }).collect();
    let names = h.base.generators();
    let x_labels = reps.iter().map(|w| if w.is_empty() { "A".to_string() } else { format!("A{}", w.to_string_with(names)) }).collect();
    Ok(TruncatedCosetAction { x_labels, y_labels: vec!["B".into()], iota: vec![0; order.len()], gamma, depth, truncated })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(n: usize) -> GroupPresentation {
        GroupPresentation::with_default_names(n, vec![]).unwrap()
    }

    #[test]
    fn ascending_examples() {
        let h = HnnData::new(free(2), vec![Word::generator(0), Word::generator(1)], vec![Word::generator(1), Word::generator(0)]).unwrap();
        assert_eq!(is_ascending_free_base(&h), Ascending::Ascending);
        let h = HnnData::new(free(1), vec![Word::power(0, 2)], vec![Word::generator(0)]).unwrap();
        assert_eq!(is_ascending_free_base(&h), Ascending::NotAscending);
        let base = GroupPresentation::with_default_names(2, vec![Word::from_signed(&[1, 2, -1, -2])]).unwrap();
        let h = HnnData::new(base, vec![Word::generator(0)], vec![Word::generator(1)]).unwrap();
        assert_eq!(is_ascending_free_base(&h), Ascending::Unknown);
    }

    #[test]
    fn witness_examples() {
        let constant = TruncatedCosetAction::new(1, vec![0, 0], vec![0, 0], 3).unwrap();
        let WitnessOutcome::Witness(s) = witness_series(&constant).unwrap() else { panic!("expected witness") };
        assert_eq!(s.terms, vec![vec![1, -1], vec![0, 0], vec![0, 0], vec![0, 0]]);
        assert!(check_witness(&constant, &s));

        let swap = TruncatedCosetAction::new(1, vec![0, 0], vec![1, 0], 3).unwrap();
        let WitnessOutcome::Witness(s) = witness_series(&swap).unwrap() else { panic!("expected witness") };
        assert_eq!(s.terms, vec![vec![1, -1], vec![-1, 1], vec![1, -1], vec![-1, 1]]);
        assert!(check_witness(&swap, &s));
        assert_eq!(s.to_string_with(&swap.x_labels), "(x0 - x1)*t^0 + (-x0 + x1)*t^1 + (x0 - x1)*t^2 + (-x0 + x1)*t^3");

        let bijection = TruncatedCosetAction::new(2, vec![1, 0], vec![0, 1], 3).unwrap();
        assert_eq!(witness_series(&bijection).unwrap(), WitnessOutcome::NoWitness);
        let missing = TruncatedCosetAction::new(2, vec![0, 0], vec![0, 1], 3).unwrap();
        assert_eq!(witness_series(&missing), Err(HnnError::NotSurjective(1)));
    }

    #[test]
    fn built_actions() {
        let h = HnnData::new(free(1), vec![Word::power(0, 2)], vec![Word::generator(0)]).unwrap();
        let c = build_truncated_action(&h, 4).unwrap();
        assert_eq!(c.nx(), 2);
        assert!(!c.truncated);
        assert_eq!(c.iota, vec![0, 0]);
        assert!(matches!(witness_series(&c).unwrap(), WitnessOutcome::Witness(_)));

        let h = HnnData::new(free(2), vec![Word::generator(0), Word::generator(1)], vec![Word::generator(1), Word::generator(0)]).unwrap();
        let c = build_truncated_action(&h, 4).unwrap();
        assert_eq!((c.nx(), c.truncated), (1, false));
        assert_eq!(witness_series(&c).unwrap(), WitnessOutcome::NoWitness);

        let h = HnnData::new(free(2), vec![Word::generator(0)], vec![Word::generator(0)]).unwrap();
        let c = build_truncated_action(&h, 2).unwrap();
        assert!(c.truncated);
        // cosets A, Ab, AB, then b-words of length two and a-branches below them
        assert!(c.nx() > 3);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"base": {"gens": ["a", "b"], "rels": []}, "assoc": ["a", "b"], "images": ["ab", "b"]}"#;
        let h = HnnData::from_json(text).unwrap();
        assert_eq!(h.gamma_images[0], Word::from_signed(&[1, 2]));
        let back = HnnData::from_json(&h.to_json().to_string()).unwrap();
        assert_eq!(back, h);
        assert!(HnnData::from_json(r#"{"base": {"gens": ["a"]}, "assoc": ["a"], "images": []}"#).is_err());
    }
}
