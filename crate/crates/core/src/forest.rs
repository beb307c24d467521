//! The rooted forest of double coset representatives and the classification
//! of `G/∼_𝒵` by paths through it.
//!
//! Generation 0 holds representatives of `τ(E)\G/σ(E)`. Below a node with
//! accumulated product `x̃` sit representatives of the double quotient of
//! `𝒵_{n+1}^{x̃}`, the datum twisted by `x̃` and refined `n + 1` times.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::coset::{double_cosets, DoubleCosetDecomposition};
use crate::equivalence::{ClassReport, Relation};
use crate::error::{Error, Result};
use crate::group::Elem;
use crate::zip::ZipDatum;

const NO_PREIMAGE: u32 = u32::MAX;

/// A double quotient `τ(E)\G/σ(E)` of one zip datum together with what is
/// needed to walk through it.
#[derive(Debug, Clone)]
pub struct Quotient {
    datum: ZipDatum,
    cosets: DoubleCosetDecomposition,
    /// One representative per coset; the identity when there is one coset.
    representatives: Vec<Elem>,
    /// The key-minimal member was replaced by the identity.
    identity_substituted: bool,
    /// `(h₀, k₀)` with `identity = h₀·r·k₀` for the key-minimal `r`, used to
    /// move witnesses onto a substituted identity.
    identity_witness: Option<(Elem, Elem)>,
    /// For each `k ∈ σ(E)`, some `e ∈ E` with `σ(e) = k`.
    sigma_section: Vec<u32>,
}

impl Quotient {
    fn new(datum: ZipDatum) -> Result<Self> {
        let g = datum.target_group().clone();
        let left = datum.tau().image(datum.e())?;
        let right = datum.sigma().image(datum.e())?;
        let cosets = double_cosets(datum.g(), &left, &right)?;
        let mut representatives: Vec<Elem> = cosets.representatives().collect();
        let mut identity_substituted = false;
        let mut identity_witness = None;
        if cosets.len() == 1 {
            let id = g.identity();
            let (h, k) = cosets.witness(id).expect("the identity lies in G");
            identity_substituted = representatives[0] != id;
            identity_witness = Some((h, k));
            representatives[0] = id;
        }
        let mut sigma_section = vec![NO_PREIMAGE; g.order()];
        for &e in datum.e().members() {
            let k = datum.sigma().apply(e);
            if sigma_section[k.index()] == NO_PREIMAGE {
                sigma_section[k.index()] = e.index() as u32;
            }
        }
        Ok(Quotient {
            datum,
            cosets,
            representatives,
            identity_substituted,
            identity_witness,
            sigma_section,
        })
    }

    pub fn datum(&self) -> &ZipDatum {
        &self.datum
    }

    pub fn cosets(&self) -> &DoubleCosetDecomposition {
        &self.cosets
    }

    pub fn representatives(&self) -> &[Elem] {
        &self.representatives
    }

    pub fn identity_substituted(&self) -> bool {
        self.identity_substituted
    }

    /// Splits `x` as `x ∼ m·r` with `m ∈ τ(E)` and `r` the chosen
    /// representative, returning `(coset index, m)`.
    fn normalize(&self, x: Elem) -> Option<(usize, Elem)> {
        let g = self.datum.target_group();
        let index = self.cosets.coset_of(x)?;
        let (mut h, mut k) = self.cosets.witness(x)?;
        if let Some((h0, k0)) = self.identity_witness {
            // x = h·r·k and 1 = h₀·r·k₀ give x = (h·h₀⁻¹)·(k₀⁻¹·k)
            h = g.mul(h, g.inv(h0));
            k = g.mul(g.inv(k0), k);
        }
        // acting by e with σ(e) = k gives τ(e)·h·r, which lies in τ(E)·r
        let e = Elem::from_index(self.sigma_section[k.index()] as usize);
        Some((index, g.mul(self.datum.tau().apply(e), h)))
    }
}

#[derive(Debug, Clone)]
pub struct ForestNode {
    pub element: Elem,
    pub parent: Option<usize>,
    /// `x_n·x_{n-1}⋯x_0` along the path from the root.
    pub accumulated: Elem,
    pub generation: usize,
    /// The refined twisted datum below this node has surjective `τ`.
    pub stable: bool,
    /// Indexed like the cosets of `quotient`; empty at the last generation.
    pub children: Vec<usize>,
    /// Double quotient of `𝒵_{n+1}^{x̃}`.
    pub quotient: Quotient,
}

#[derive(Debug, Clone)]
pub struct RepForest {
    root_quotient: Quotient,
    nodes: Vec<ForestNode>,
    generations: Vec<Vec<usize>>,
}

/// The tuple `(r_0, …, r_N)` of representatives met when classifying an
/// element, with the forest nodes they occupy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationPath {
    pub entries: Vec<Elem>,
    pub nodes: Vec<usize>,
}

/// Builds generations until every node of the last one is stable. Stable
/// nodes above that get identity chains so all paths have equal length.
pub fn build_forest(z: &ZipDatum) -> Result<RepForest> {
    let root_quotient = Quotient::new(z.clone())?;
    let mut nodes: Vec<ForestNode> = Vec::new();
    let mut current = Vec::new();
    for &r in root_quotient.representatives() {
        current.push(nodes.len());
        nodes.push(make_node(z, r, None, r, 0)?);
    }
    let mut generations = vec![current];
    // every unstable step shrinks E or G along the path
    let limit = chain_bound(z.e().order()) + chain_bound(z.g().order()) + 1;
    loop {
        let last = generations.last().expect("at least the roots");
        if last.iter().all(|&i| nodes[i].stable) {
            break;
        }
        if generations.len() > limit {
            return Err(Error::InvariantViolation("forest does not become stationary".into()));
        }
        let generation = generations.len();
        let mut next = Vec::new();
        for &parent in last.clone().iter() {
            let reps = nodes[parent].quotient.representatives().to_vec();
            let parent_acc = nodes[parent].accumulated;
            let mut children = Vec::with_capacity(reps.len());
            for r in reps {
                let acc = z.target_group().mul(r, parent_acc);
                children.push(nodes.len());
                next.push(nodes.len());
                let node = if nodes[parent].stable {
                    stable_copy(&nodes[parent], parent, r, acc)
                } else {
                    make_node(z, r, Some(parent), acc, generation)?
                };
                nodes.push(node);
            }
            nodes[parent].children = children;
        }
        generations.push(next);
    }
    Ok(RepForest {
        root_quotient,
        nodes,
        generations,
    })
}

fn chain_bound(order: usize) -> usize {
    (usize::BITS - order.leading_zeros()) as usize
}

fn make_node(
    z: &ZipDatum,
    element: Elem,
    parent: Option<usize>,
    accumulated: Elem,
    generation: usize,
) -> Result<ForestNode> {
    let datum = z.twist(accumulated)?.refine_times(generation + 1)?;
    Ok(ForestNode {
        element,
        parent,
        accumulated,
        generation,
        stable: datum.tau_surjective(),
        children: Vec::new(),
        quotient: Quotient::new(datum)?,
    })
}

/// Below a stable node the datum no longer changes: refining a datum with
/// surjective `τ` returns it, and the only child is the identity.
fn stable_copy(parent: &ForestNode, parent_index: usize, element: Elem, accumulated: Elem) -> ForestNode {
    ForestNode {
        element,
        parent: Some(parent_index),
        accumulated,
        generation: parent.generation + 1,
        stable: true,
        children: Vec::new(),
        quotient: parent.quotient.clone(),
    }
}

impl RepForest {
    pub fn root_quotient(&self) -> &Quotient {
        &self.root_quotient
    }

    pub fn nodes(&self) -> &[ForestNode] {
        &self.nodes
    }

    pub fn node(&self, index: usize) -> &ForestNode {
        &self.nodes[index]
    }

    /// Node indices per generation `R_0, …, R_N`.
    pub fn generations(&self) -> &[Vec<usize>] {
        &self.generations
    }

    pub fn roots(&self) -> &[usize] {
        &self.generations[0]
    }

    /// The first generation `N` at which every node is stable.
    pub fn stationary_generation(&self) -> usize {
        self.generations.len() - 1
    }

    /// Maximal paths, one per node of the last generation.
    pub fn leaves(&self) -> &[usize] {
        self.generations.last().expect("at least the roots")
    }

    pub fn datum(&self) -> &ZipDatum {
        self.root_quotient.datum()
    }

    /// Some quotient in the forest replaced a non-identity representative
    /// of a single coset by the identity.
    pub fn identity_substituted(&self) -> bool {
        self.root_quotient.identity_substituted || self.nodes.iter().any(|n| n.quotient.identity_substituted)
    }

    /// `r_0` is the representative of `x`; then `x` is replaced within its
    /// class by `m·r_0` with `m ∈ τ(E)` and the walk continues with `m`.
    pub fn classify(&self, x: Elem) -> Result<ClassificationPath> {
        self.datum().g().require(x, "G")?;
        let g = self.datum().target_group();
        let mut entries = Vec::with_capacity(self.generations.len());
        let mut path = Vec::with_capacity(self.generations.len());
        let (index, mut rest) = self.root_quotient.normalize(x).expect("x lies in G");
        let mut node = self.generations[0][index];
        loop {
            entries.push(self.nodes[node].element);
            path.push(node);
            let current = &self.nodes[node];
            if current.children.is_empty() {
                break;
            }
            let (index, m) = current.quotient.normalize(rest).ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "{} left the carrier at generation {}",
                    g.format(rest),
                    current.generation + 1
                ))
            })?;
            rest = m;
            node = current.children[index];
        }
        Ok(ClassificationPath { entries, nodes: path })
    }

    /// `r_N⋯r_0`.
    pub fn reconstruct(&self, path: &ClassificationPath) -> Elem {
        self.datum().target_group().product(path.entries.iter().rev().copied())
    }

    /// The path ending at `leaf`.
    pub fn path_to(&self, leaf: usize) -> ClassificationPath {
        let mut nodes = vec![leaf];
        while let Some(p) = self.nodes[*nodes.last().expect("non-empty")].parent {
            nodes.push(p);
        }
        nodes.reverse();
        ClassificationPath {
            entries: nodes.iter().map(|&i| self.nodes[i].element).collect(),
            nodes,
        }
    }

    /// `classify` is constant on every oracle class, separates classes, and
    /// the number of maximal paths equals the number of classes.
    pub fn limit_bijection_check(&self, oracle: &ClassReport) -> Result<bool> {
        require_oracle(self, oracle)?;
        let mut seen = BTreeSet::new();
        for class in oracle.classes() {
            let leaf = *self.classify(class.witness)?.nodes.last().expect("paths are non-empty");
            for &y in &class.members {
                if *self.classify(y)?.nodes.last().expect("paths are non-empty") != leaf {
                    return Ok(false);
                }
            }
            if !seen.insert(leaf) {
                return Ok(false);
            }
        }
        Ok(self.leaves().len() == oracle.len())
    }

    /// Structural invariants: parent products, literal per-node data,
    /// hereditary stability, distinct node identifiers, leaf counts per root against the classes meeting
    /// its double coset, and `classify ∘ reconstruct = id` on maximal paths.
    pub fn check_structure(&self, oracle: &ClassReport) -> Result<bool> {
        require_oracle(self, oracle)?;
        let z = self.datum();
        let g = z.target_group();
        for node in &self.nodes {
            let expected_acc = match node.parent {
                Some(p) => g.mul(node.element, self.nodes[p].accumulated),
                None => node.element,
            };
            if node.accumulated != expected_acc {
                return Ok(false);
            }
            if node.quotient.datum() != &z.twist(node.accumulated)?.refine_times(node.generation + 1)? {
                return Ok(false);
            }
            if let Some(p) = node.parent {
                let parent = &self.nodes[p];
                if parent.stable && (!node.stable || node.element != g.identity() || parent.children.len() != 1) {
                    return Ok(false);
                }
                // the recursive description of the same datum
                let recursive = parent.quotient.datum().twist(node.element)?.refine()?;
                if &recursive != node.quotient.datum() {
                    return Ok(false);
                }
            }
        }
        let ids: BTreeSet<(usize, Elem)> = self.nodes.iter().map(|n| (n.generation, n.accumulated)).collect();
        if ids.len() != self.nodes.len() {
            return Ok(false);
        }
        for (i, &root) in self.roots().iter().enumerate() {
            let leaves = self
                .leaves()
                .iter()
                .filter(|&&l| self.path_to(l).nodes[0] == root)
                .count();
            let meeting: BTreeSet<usize> = self.root_quotient.cosets().cosets()[i]
                .members
                .iter()
                .map(|&y| oracle.class_of(y).expect("oracle covers G"))
                .collect();
            if leaves != meeting.len() {
                return Ok(false);
            }
        }
        for &leaf in self.leaves() {
            let path = self.path_to(leaf);
            if self.classify(self.reconstruct(&path))? != path {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Stable identifier `generation:accumulated`; accumulated products are
    /// distinct within a generation.
    pub fn node_id(&self, index: usize) -> String {
        let n = &self.nodes[index];
        format!("{}:{}", n.generation, self.datum().target_group().format(n.accumulated))
    }

    /// Graphviz rendering: one node per forest vertex, roots on the first
    /// rank, labels carry the element and stability.
    pub fn to_dot(&self) -> String {
        let g = self.datum().target_group();
        let id = |i: usize| self.node_id(i);
        let mut out = String::from("digraph forest {\n  rankdir=TB;\n  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let flag = if n.stable { "stable" } else { "unstable" };
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{}\\n{}\"];",
                escape(&id(i)),
                escape(&g.format(n.element)),
                flag
            );
        }
        out.push_str("  { rank=same;");
        for &r in self.roots() {
            let _ = write!(out, " \"{}\";", escape(&id(r)));
        }
        out.push_str(" }\n");
        for (i, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                let _ = writeln!(out, "  \"{}\" -> \"{}\";", escape(&id(i)), escape(&id(c)));
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn require_oracle(forest: &RepForest, oracle: &ClassReport) -> Result<()> {
    if oracle.datum() != forest.datum() || oracle.relation() != Relation::ZipCoarse {
        return Err(Error::Mismatch(
            "oracle must be the zip classes of the forest's datum".into(),
        ));
    }
    Ok(())
}
