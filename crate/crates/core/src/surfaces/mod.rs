//! Cut graphs of decomposing surfaces and the weight-reduction procedure that
//! makes the complement of a norm-minimizing surface connected.
//!
//! Regions are the components of the complement of the full surface; each
//! surface component is an edge from the region on its negative side to the
//! region on its positive side, labelled with `chi_-` and its homology class.
//! Every region's outgoing classes sum to its incoming classes.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("edge {0} has an endpoint outside the regions")]
    BadEdge(usize),
    #[error("edge {0} has a class of the wrong rank")]
    RankMismatch(usize),
    #[error("boundary of region {region} is not null-homologous")]
    NotNullHomologous { region: usize },
    #[error("cut graph is not connected")]
    Disconnected,
    #[error("weight has {found} entries for {expected} edges")]
    WeightLength { expected: usize, found: usize },
    #[error("chi_- differs across the boundary of region {region}; the surface is not norm-minimizing")]
    StrictInequalityBranch { region: usize },
    #[error("boundary of region {region} lies on one side only")]
    EmptySide { region: usize },
    #[error("invalid cut graph: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CutEdge {
    pub from: usize,
    pub to: usize,
    pub chi: u64,
    pub class: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawCutGraph", into = "RawCutGraph")]
pub struct CutGraph {
    regions: usize,
    edges: Vec<CutEdge>,
}

#[derive(Serialize, Deserialize)]
struct RawCutGraph {
    regions: usize,
    edges: Vec<CutEdge>,
}

impl TryFrom<RawCutGraph> for CutGraph {
    type Error = SurfaceError;

    fn try_from(raw: RawCutGraph) -> Result<Self, SurfaceError> {
        CutGraph::new(raw.regions, raw.edges)
    }
}

impl From<CutGraph> for RawCutGraph {
    fn from(g: CutGraph) -> Self {
        RawCutGraph { regions: g.regions, edges: g.edges }
    }
}

/// Union-find over regions.
struct Components {
    parent: Vec<usize>,
}

impl Components {
    fn new(n: usize) -> Self {
        Components { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&x| self.find(x) == x).count()
    }
}

impl CutGraph {
    pub fn new(regions: usize, edges: Vec<CutEdge>) -> Result<Self, SurfaceError> {
        let rank = edges.first().map_or(0, |e| e.class.len());
        for (i, e) in edges.iter().enumerate() {
            if e.from >= regions || e.to >= regions {
                return Err(SurfaceError::BadEdge(i));
            }
            if e.class.len() != rank {
                return Err(SurfaceError::RankMismatch(i));
            }
        }
        for region in 0..regions {
            let mut sum = vec![0i64; rank];
            for e in &edges {
                for (k, c) in e.class.iter().enumerate() {
                    if e.from == region {
                        sum[k] += c;
                    }
                    if e.to == region {
                        sum[k] -= c;
                    }
                }
            }
            if sum.iter().any(|&s| s != 0) {
                return Err(SurfaceError::NotNullHomologous { region });
            }
        }
        let g = CutGraph { regions, edges };
        let mut comps = Components::new(regions);
        for e in &g.edges {
            comps.union(e.from, e.to);
        }
        if regions == 0 || comps.count() != 1 {
            return Err(SurfaceError::Disconnected);
        }
        Ok(g)
    }

    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        serde_json::from_str(text).map_err(|e| SurfaceError::Json(e.to_string()))
    }

    pub fn regions(&self) -> usize {
        self.regions
    }

    pub fn edges(&self) -> &[CutEdge] {
        &self.edges
    }

    pub fn rank(&self) -> usize {
        self.edges.first().map_or(0, |e| e.class.len())
    }

    /// `[Sigma(w)] = sum w_i [Sigma_i]`.
    pub fn weighted_class(&self, w: &Weight) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for (e, &k) in self.edges.iter().zip(&w.0) {
            for (o, c) in out.iter_mut().zip(&e.class) {
                *o += k as i64 * c;
            }
        }
        out
    }

    /// `chi_-(Sigma(w)) = sum w_i chi_-(Sigma_i)`.
    pub fn weighted_chi(&self, w: &Weight) -> u64 {
        self.edges.iter().zip(&w.0).map(|(e, &k)| k * e.chi).sum()
    }

    fn check_weight(&self, w: &Weight) -> Result<(), SurfaceError> {
        if w.0.len() != self.edges.len() {
            return Err(SurfaceError::WeightLength { expected: self.edges.len(), found: w.0.len() });
        }
        Ok(())
    }

    fn complement(&self, w: &Weight) -> Components {
        let mut comps = Components::new(self.regions);
        for (e, &k) in self.edges.iter().zip(&w.0) {
            if k == 0 {
                comps.union(e.from, e.to);
            }
        }
        comps
    }
}

/// Multiplicities of the surface components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Weight(pub Vec<u64>);

impl Weight {
    pub fn ones(n: usize) -> Self {
        Weight(vec![1; n])
    }

    /// `|w|`.
    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    /// `N(w)`, the number of components in the support.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|&&k| k > 0).count()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }
}

/// Number of components of the complement of the support of `w`: regions
/// joined across every edge of weight zero.
pub fn complement_components(g: &CutGraph, w: &Weight) -> usize {
    g.complement(w).count()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum ReduceMode {
    /// Unequal `chi_-` across a boundary is an input error.
    #[default]
    Strict,
    /// Unequal `chi_-` is resolved by the `chi_-`-decreasing update.
    Relax,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub initial_weight: Weight,
    pub final_weight: Weight,
    pub steps: usize,
    pub class_preserved: bool,
    pub chi_preserved: bool,
    pub complement_connected: bool,
    /// `|v| > 1`, required only when the starting complement was disconnected.
    pub total_ge_two: bool,
    pub chi_initial: u64,
    pub chi_final: u64,
}

impl WeightReport {
    pub fn succeeded(&self) -> bool {
        self.class_preserved && self.chi_preserved && self.complement_connected && self.total_ge_two
    }

    pub fn to_json(&self) -> Value {
        json!({
            "initial": self.initial_weight.0,
            "final": self.final_weight.0,
            "total": self.final_weight.total(),
            "steps": self.steps,
            "class_preserved": self.class_preserved,
            "chi_preserved": self.chi_preserved,
            "complement_connected": self.complement_connected,
            "total_ge_two": self.total_ge_two,
            "chi": { "initial": self.chi_initial, "final": self.chi_final },
        })
    }
}

/// One application of the reduction step to the complement component
/// containing the smallest region.
fn reduce_once(g: &CutGraph, w: &Weight, mode: ReduceMode) -> Result<Weight, SurfaceError> {
    let mut comps = g.complement(w);
    let root = comps.find(0);
    let in_y: Vec<bool> = (0..g.regions).map(|r| comps.find(r) == root).collect();
    let region = (0..g.regions).find(|&r| in_y[r]).expect("region 0 is in its own component");
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (i, e) in g.edges.iter().enumerate() {
        if w.0[i] == 0 || in_y[e.from] == in_y[e.to] {
            continue;
        }
        if in_y[e.from] {
            plus.push(i);
        } else {
            minus.push(i);
        }
    }
    if plus.is_empty() || minus.is_empty() {
        return Err(SurfaceError::EmptySide { region });
    }
    let chi_of = |side: &[usize]| -> u64 { side.iter().map(|&i| g.edges[i].chi).sum() };
    let (chi_plus, chi_minus) = (chi_of(&plus), chi_of(&minus));
    let mut v = w.clone();
    if chi_plus != chi_minus {
        if mode == ReduceMode::Strict {
            return Err(SurfaceError::StrictInequalityBranch { region });
        }
        let (down, up) = if chi_plus > chi_minus { (&plus, &minus) } else { (&minus, &plus) };
        down.iter().for_each(|&j| v.0[j] -= 1);
        up.iter().for_each(|&j| v.0[j] += 1);
        return Ok(v);
    }
    let i = plus.iter().chain(&minus).copied().min_by_key(|&j| (w.0[j], j)).expect("boundary is nonempty");
    let m = w.0[i];
    let (down, up) = if plus.contains(&i) { (&plus, &minus) } else { (&minus, &plus) };
    down.iter().for_each(|&j| v.0[j] -= m);
    up.iter().for_each(|&j| v.0[j] += m);
    Ok(v)
}

/// Applies the reduction step until the complement of the support is
/// connected.
pub fn reduce_weights(g: &CutGraph, w0: &Weight, mode: ReduceMode) -> Result<WeightReport, SurfaceError> {
    g.check_weight(w0)?;
    let class = g.weighted_class(w0);
    let chi_initial = g.weighted_chi(w0);
    let started_disconnected = complement_components(g, w0) > 1;
    let mut w = w0.clone();
    let mut steps = 0;
    while complement_components(g, &w) > 1 {
        let v = reduce_once(g, &w, mode)?;
        assert_eq!(g.weighted_class(&v), class, "reduction step changed the class");
        if g.weighted_chi(&v) == g.weighted_chi(&w) {
            assert!(v.support_size() < w.support_size(), "equality step must shrink the support");
        } else {
            assert!(g.weighted_chi(&v) < g.weighted_chi(&w), "relaxed step must lower chi");
        }
        w = v;
        steps += 1;
    }
    let chi_final = g.weighted_chi(&w);
    Ok(WeightReport {
        initial_weight: w0.clone(),
        class_preserved: g.weighted_class(&w) == class,
        chi_preserved: chi_final == chi_initial,
        complement_connected: complement_components(g, &w) == 1,
        total_ge_two: !started_disconnected || w.total() > 1,
        final_weight: w,
        steps,
        chi_initial,
        chi_final,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The surface is already connected.
    NoObstruction,
    /// The configuration cannot exist under the stated hypotheses.
    Contradiction { reason: String },
    /// A single component survives with multiplicity `n > 1`, compatible
    /// with a non-primitive class.
    Consistent { edge: usize, multiplicity: u64 },
    /// Torsion is zero, so the surviving components are not constrained.
    HypothesisMissing,
}

impl Obstruction {
    pub fn to_json(&self) -> Value {
        match self {
            Obstruction::NoObstruction => json!({ "verdict": "no-obstruction" }),
            Obstruction::Contradiction { reason } => json!({ "verdict": "contradiction", "reason": reason }),
            Obstruction::Consistent { edge, multiplicity } => {
                json!({ "verdict": "consistent", "edge": edge, "multiplicity": multiplicity })
            }
            Obstruction::HypothesisMissing => json!({ "verdict": "hypothesis-missing" }),
        }
    }
}

/// Runs the reduction from `w0` and confronts the result with the fact that
/// nonzero torsion allows a single surviving component, whose multiplicity
/// must then divide `phi`.
pub fn connectedness_obstruction(
    g: &CutGraph,
    w0: &Weight,
    phi_primitive: bool,
    tau_nonzero: bool,
) -> Result<(Obstruction, WeightReport), SurfaceError> {
    let report = reduce_weights(g, w0, ReduceMode::Strict)?;
    if w0.support_size() <= 1 {
        return Ok((Obstruction::NoObstruction, report));
    }
    if !tau_nonzero {
        return Ok((Obstruction::HypothesisMissing, report));
    }
    let support = report.final_weight.support();
    let verdict = match support.as_slice() {
        [edge] => {
            let n = report.final_weight.0[*edge];
            if n > 1 && phi_primitive {
                Obstruction::Contradiction { reason: format!("phi = {n} PD[S_{edge}] is not primitive") }
            } else if n > 1 {
                Obstruction::Consistent { edge: *edge, multiplicity: n }
            } else {
                Obstruction::NoObstruction
            }
        }
        _ => Obstruction::Contradiction { reason: format!("{} components survive although nonzero torsion allows one", support.len()) },
    };
    Ok((verdict, report))
}
