//! Hypergraphs given by vertex-edge incidence matrices, their products,
//! chambers and the Poincaré dual of a product.
//!
//! Index conventions for a product `H1·H2` (normative; every serialized
//! matrix and witness depends on them):
//!
//! * vertex `(x, y)` with `x ∈ V1`, `y ∈ V2` has index `x·|V2| + y`;
//! * left edges `(a, β)` with `a ∈ V1`, `β ∈ E2` come first, at `a·|E2| + β`;
//! * right edges `(b, α)` with `b ∈ V2`, `α ∈ E1` follow, at
//!   `|V1|·|E2| + b·|E1| + α`;
//! * chamber `(α, β)` has row index `α·|E2| + β`.

use crate::gf2::{self, BinaryMatrix, BinaryVector};

/// A hypergraph: rows of the incidence matrix are vertices, columns are edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    incidence: BinaryMatrix,
    edges: Vec<Vec<usize>>,
    vertex_edges: Vec<Vec<usize>>,
}

/// Degenerate structure that silently lowers distances if left unnoticed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub isolated_vertices: Vec<usize>,
    pub empty_edges: Vec<usize>,
}

impl Validation {
    pub fn is_clean(&self) -> bool {
        self.isolated_vertices.is_empty() && self.empty_edges.is_empty()
    }
}

impl Hypergraph {
    pub fn from_incidence(incidence: BinaryMatrix) -> Self {
        let edges = incidence.column_supports();
        let vertex_edges = incidence.row_supports();
        Self {
            incidence,
            edges,
            vertex_edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.incidence.rows()
    }

    pub fn edge_count(&self) -> usize {
        self.incidence.cols()
    }

    pub fn incidence(&self) -> &BinaryMatrix {
        &self.incidence
    }

    /// Vertices of edge `j`, ascending.
    pub fn edge(&self, j: usize) -> &[usize] {
        &self.edges[j]
    }

    /// Edges incident to vertex `i`, ascending.
    pub fn incident_edges(&self, i: usize) -> &[usize] {
        &self.vertex_edges[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.vertex_edges[i].len()
    }

    pub fn transpose(&self) -> Hypergraph {
        Hypergraph {
            incidence: self.incidence.transpose(),
            edges: self.vertex_edges.clone(),
            vertex_edges: self.edges.clone(),
        }
    }

    /// `dim Z(H) = |E| − rank H`.
    pub fn cycle_code_dim(&self) -> usize {
        self.edge_count() - gf2::rank(&self.incidence)
    }

    /// Basis of the cycle code `Z(H)`.
    pub fn cycle_basis(&self) -> Vec<BinaryVector> {
        gf2::kernel_basis(&self.incidence)
    }

    pub fn validate(&self) -> Validation {
        Validation {
            isolated_vertices: (0..self.vertex_count())
                .filter(|&i| self.vertex_edges[i].is_empty())
                .collect(),
            empty_edges: (0..self.edge_count()).filter(|&j| self.edges[j].is_empty()).collect(),
        }
    }

    /// `Some(t)` when every edge has exactly `t` vertices.
    pub fn uniformity(&self) -> Option<usize> {
        constant(self.edges.iter().map(Vec::len))
    }

    /// `Some(Δ)` when every vertex lies in exactly `Δ` edges.
    pub fn regularity(&self) -> Option<usize> {
        constant(self.vertex_edges.iter().map(Vec::len))
    }
}

fn constant(mut it: impl Iterator<Item = usize>) -> Option<usize> {
    let first = it.next()?;
    it.all(|x| x == first).then_some(first)
}

pub fn from_incidence(m: BinaryMatrix) -> Hypergraph {
    Hypergraph::from_incidence(m)
}

pub fn transpose_hg(h: &Hypergraph) -> Hypergraph {
    h.transpose()
}

pub fn cycle_code_dim(h: &Hypergraph) -> usize {
    h.cycle_code_dim()
}

/// A product edge, labelled by the factor data it was inflated from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductEdge {
    /// `(a, β)`: vertex `a ∈ V1` times edge `β ∈ E2`.
    Left { vertex: usize, edge: usize },
    /// `(b, α)`: vertex `b ∈ V2` times edge `α ∈ E1`.
    Right { vertex: usize, edge: usize },
}

/// The product hypergraph `H1·H2` with its edge labelling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductHypergraph {
    left: Hypergraph,
    right: Hypergraph,
    product: Hypergraph,
}

/// A chamber `C_{αβ}`: the left edges `(a, β)` for `a ∈ α` together with
/// the right edges `(b, α)` for `b ∈ β`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub alpha: usize,
    pub beta: usize,
    pub support: BinaryVector,
}

impl ProductHypergraph {
    pub fn new(left: Hypergraph, right: Hypergraph) -> Self {
        let (v1, e1) = (left.vertex_count(), left.edge_count());
        let (v2, e2) = (right.vertex_count(), right.edge_count());
        let n_edges = v1 * e2 + v2 * e1;
        let mut incidence = BinaryMatrix::zeros(v1 * v2, n_edges);
        for a in 0..v1 {
            for beta in 0..e2 {
                let col = a * e2 + beta;
                for &y in right.edge(beta) {
                    incidence.set(a * v2 + y, col, true);
                }
            }
        }
        for b in 0..v2 {
            for alpha in 0..e1 {
                let col = v1 * e2 + b * e1 + alpha;
                for &x in left.edge(alpha) {
                    incidence.set(x * v2 + b, col, true);
                }
            }
        }
        Self {
            left,
            right,
            product: Hypergraph::from_incidence(incidence),
        }
    }

    pub fn left(&self) -> &Hypergraph {
        &self.left
    }

    pub fn right(&self) -> &Hypergraph {
        &self.right
    }

    /// The realized product hypergraph; its incidence matrix is `H_X`.
    pub fn hypergraph(&self) -> &Hypergraph {
        &self.product
    }

    pub fn vertex_edge_incidence(&self) -> &BinaryMatrix {
        self.product.incidence()
    }

    pub fn vertex_count(&self) -> usize {
        self.product.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.product.edge_count()
    }

    pub fn left_edge_count(&self) -> usize {
        self.left.vertex_count() * self.right.edge_count()
    }

    pub fn vertex_index(&self, x: usize, y: usize) -> usize {
        assert!(x < self.left.vertex_count() && y < self.right.vertex_count());
        x * self.right.vertex_count() + y
    }

    pub fn edge_index(&self, edge: ProductEdge) -> usize {
        match edge {
            ProductEdge::Left { vertex, edge } => {
                assert!(vertex < self.left.vertex_count() && edge < self.right.edge_count());
                vertex * self.right.edge_count() + edge
            }
            ProductEdge::Right { vertex, edge } => {
                assert!(vertex < self.right.vertex_count() && edge < self.left.edge_count());
                self.left_edge_count() + vertex * self.left.edge_count() + edge
            }
        }
    }

    pub fn edge_label(&self, index: usize) -> ProductEdge {
        assert!(index < self.edge_count(), "edge {index} out of range");
        let split = self.left_edge_count();
        if index < split {
            let e2 = self.right.edge_count();
            ProductEdge::Left {
                vertex: index / e2,
                edge: index % e2,
            }
        } else {
            let e1 = self.left.edge_count();
            let i = index - split;
            ProductEdge::Right {
                vertex: i / e1,
                edge: i % e1,
            }
        }
    }

    pub fn chamber_count(&self) -> usize {
        self.left.edge_count() * self.right.edge_count()
    }

    /// Edge indices of `C_{αβ}`, left block first, ascending.
    pub fn chamber_edges(&self, alpha: usize, beta: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .left
            .edge(alpha)
            .iter()
            .map(|&a| self.edge_index(ProductEdge::Left { vertex: a, edge: beta }))
            .collect();
        out.extend(
            self.right
                .edge(beta)
                .iter()
                .map(|&b| self.edge_index(ProductEdge::Right { vertex: b, edge: alpha })),
        );
        out
    }

    pub fn chamber(&self, alpha: usize, beta: usize) -> Chamber {
        Chamber {
            alpha,
            beta,
            support: BinaryVector::from_indices(self.edge_count(), &self.chamber_edges(alpha, beta)),
        }
    }

    /// Chambers in row-major `(α, β)` order, built on demand.
    pub fn chambers(&self) -> impl Iterator<Item = Chamber> + '_ {
        let e2 = self.right.edge_count();
        (0..self.chamber_count()).map(move |i| self.chamber(i / e2, i % e2))
    }

    /// Chamber-edge incidence matrix; this is `H_Z`.
    pub fn chamber_edge_incidence(&self) -> BinaryMatrix {
        BinaryMatrix::from_rows(self.edge_count(), self.chambers().map(|c| c.support).collect())
    }

    /// GF(2) sum of the chambers over `z1 × z2` for edge subsets `z1 ⊆ E1`,
    /// `z2 ⊆ E2`.
    pub fn chamber_sum(&self, z1: &BinaryVector, z2: &BinaryVector) -> BinaryVector {
        assert_eq!(z1.len(), self.left.edge_count());
        assert_eq!(z2.len(), self.right.edge_count());
        let mut acc = BinaryVector::zeros(self.edge_count());
        for alpha in z1.iter_ones() {
            for beta in z2.iter_ones() {
                for e in self.chamber_edges(alpha, beta) {
                    acc.flip(e);
                }
            }
        }
        acc
    }

    pub fn poincare_dual(&self) -> PoincareDual {
        PoincareDual::new(self)
    }
}

pub fn product(h1: &Hypergraph, h2: &Hypergraph) -> ProductHypergraph {
    ProductHypergraph::new(h1.clone(), h2.clone())
}

pub fn chambers(p: &ProductHypergraph) -> Vec<Chamber> {
    p.chambers().collect()
}

pub fn poincare_dual(p: &ProductHypergraph) -> PoincareDual {
    p.poincare_dual()
}

/// The dual product `G = H1ᵀ·H2ᵀ` together with the identification of its
/// edge set with that of the original product: left edge `(a, β)` of `H`
/// is right edge `(β, a)` of `G`, and right edge `(b, α)` of `H` is left
/// edge `(α, b)` of `G`.
#[derive(Clone, Debug)]
pub struct PoincareDual {
    dual: ProductHypergraph,
    to_dual: Vec<usize>,
    from_dual: Vec<usize>,
}

impl PoincareDual {
    fn new(p: &ProductHypergraph) -> Self {
        let dual = ProductHypergraph::new(p.left.transpose(), p.right.transpose());
        let n = p.edge_count();
        let mut to_dual = vec![0; n];
        let mut from_dual = vec![0; n];
        for (i, slot) in to_dual.iter_mut().enumerate() {
            let mapped = match p.edge_label(i) {
                ProductEdge::Left { vertex, edge } => ProductEdge::Right {
                    vertex: edge,
                    edge: vertex,
                },
                ProductEdge::Right { vertex, edge } => ProductEdge::Left {
                    vertex: edge,
                    edge: vertex,
                },
            };
            let j = dual.edge_index(mapped);
            *slot = j;
            from_dual[j] = i;
        }
        Self {
            dual,
            to_dual,
            from_dual,
        }
    }

    pub fn product(&self) -> &ProductHypergraph {
        &self.dual
    }

    pub fn edge_to_dual(&self, i: usize) -> usize {
        self.to_dual[i]
    }

    pub fn edge_from_dual(&self, j: usize) -> usize {
        self.from_dual[j]
    }

    /// Carries a vector indexed by the original edges onto the dual's edges.
    pub fn transport_to_dual(&self, v: &BinaryVector) -> BinaryVector {
        permute(v, &self.to_dual)
    }

    /// Carries a vector indexed by the dual's edges back onto the original.
    pub fn transport_from_dual(&self, v: &BinaryVector) -> BinaryVector {
        permute(v, &self.from_dual)
    }

    /// Applies [`Self::transport_from_dual`] to every row.
    pub fn matrix_from_dual(&self, m: &BinaryMatrix) -> BinaryMatrix {
        BinaryMatrix::from_rows(
            m.cols(),
            m.row_vectors().iter().map(|r| self.transport_from_dual(r)).collect(),
        )
    }
}

fn permute(v: &BinaryVector, map: &[usize]) -> BinaryVector {
    assert_eq!(v.len(), map.len(), "vector length does not match edge count");
    let mut out = BinaryVector::zeros(v.len());
    for i in v.iter_ones() {
        out.set(map[i], true);
    }
    out
}
