//! Constructors for the ideal families attached to a graph: `L_G`, `Π_G`,
//! the building blocks `I_{K_n}` and `I_{K_{m,n-m}}`, the prime components
//! `Q_S(G)`, and the linear change of variables `φ`.
//!
//! Every constructor uses the global variable indices of the ambient ring,
//! so ideals built for different `S` can be compared directly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Coeff;
use crate::graph::{ComponentData, Graph, VertexSet};
use crate::groebner::Ideal;
use crate::poly::Polynomial;
use crate::ring::Ring;

fn var(ring: &Ring, idx: usize) -> Polynomial {
    Polynomial::var(ring, idx)
}

/// `f_ij = x_i x_j + y_i y_j`
pub fn f_ij(ring: &Ring, i: usize, j: usize) -> Polynomial {
    var(ring, ring.x(i)).mul(&var(ring, ring.x(j))).add(&var(ring, ring.y(i)).mul(&var(ring, ring.y(j))))
}

/// `g_ij = x_i y_j - x_j y_i`
pub fn g_ij(ring: &Ring, i: usize, j: usize) -> Polynomial {
    var(ring, ring.x(i)).mul(&var(ring, ring.y(j))).sub(&var(ring, ring.x(j)).mul(&var(ring, ring.y(i))))
}

/// `h_i = x_i^2 + y_i^2`
pub fn h_i(ring: &Ring, i: usize) -> Polynomial {
    var(ring, ring.x(i)).pow(2).add(&var(ring, ring.y(i)).pow(2))
}

/// The permanent `b_ij = x_i y_j + x_j y_i`.
pub fn b_ij(ring: &Ring, i: usize, j: usize) -> Polynomial {
    var(ring, ring.x(i)).mul(&var(ring, ring.y(j))).add(&var(ring, ring.x(j)).mul(&var(ring, ring.y(i))))
}

fn check_ring(g: &Graph, ring: &Ring, width: Option<usize>) -> Result<()> {
    if ring.n() != g.n() {
        return Err(Error::Precondition(format!(
            "graph has {} vertices but the ring has {}",
            g.n(),
            ring.n()
        )));
    }
    if let Some(w) = width {
        if ring.width() != w {
            return Err(Error::Precondition(format!("expected {w} coordinates per vertex")));
        }
    }
    Ok(())
}

fn check_vertices(ring: &Ring, vs: VertexSet) -> Result<()> {
    if !vs.is_subset(VertexSet::full(ring.n())) {
        return Err(Error::Precondition(format!("{vs} is not a subset of [{}]", ring.n())));
    }
    if ring.width() != 2 {
        return Err(Error::Precondition("expected 2 coordinates per vertex".into()));
    }
    Ok(())
}

/// `L_G`: one generator `Σ_k x_{ik} x_{jk}` per edge, with `d` taken from the
/// ring's width.
pub fn build_lg(g: &Graph, ring: &Ring) -> Result<Ideal> {
    check_ring(g, ring, None)?;
    let gens = g
        .edges()
        .into_iter()
        .map(|(i, j)| {
            (0..ring.width()).fold(Polynomial::zero(ring), |acc, k| {
                acc.add(&var(ring, ring.var(i, k)).mul(&var(ring, ring.var(j, k))))
            })
        })
        .collect();
    Ideal::new(ring, gens)
}

/// `Π_G`: one permanent `x_i y_j + x_j y_i` per edge of `g`.
pub fn build_pig(g: &Graph, ring: &Ring) -> Result<Ideal> {
    check_ring(g, ring, Some(2))?;
    Ideal::new(ring, g.edges().into_iter().map(|(i, j)| b_ij(ring, i, j)).collect())
}

/// `I_{K}` on the given vertices: all `f_ij`, `g_ij`, and `h_i` when there
/// are more than two vertices.
pub fn build_ikn_on(vertices: VertexSet, ring: &Ring) -> Result<Ideal> {
    check_vertices(ring, vertices)?;
    let vs = vertices.to_vec();
    let pairs: Vec<(usize, usize)> =
        vs.iter().enumerate().flat_map(|(a, &i)| vs[a + 1..].iter().map(move |&j| (i, j))).collect();
    let mut gens: Vec<Polynomial> = pairs.iter().map(|&(i, j)| f_ij(ring, i, j)).collect();
    if vs.len() > 2 {
        gens.extend(pairs.iter().map(|&(i, j)| g_ij(ring, i, j)));
        gens.extend(vs.iter().map(|&i| h_i(ring, i)));
    }
    Ideal::new(ring, gens)
}

/// `I_{K_{A,B}}`: `f_ij` across the blocks, `g_ij` within each block.
pub fn build_ikmn_on(a: VertexSet, b: VertexSet, ring: &Ring) -> Result<Ideal> {
    check_vertices(ring, a.union(b))?;
    if !a.intersection(b).is_empty() {
        return Err(Error::Precondition("blocks must be disjoint".into()));
    }
    let mut gens = Vec::new();
    for i in a.iter() {
        for j in b.iter() {
            gens.push(f_ij(ring, i.min(j), i.max(j)));
        }
    }
    gens.sort_by(|p, q| q.leading_monomial().cmp(&p.leading_monomial()));
    for block in [a, b] {
        let vs = block.to_vec();
        for (k, &i) in vs.iter().enumerate() {
            for &j in &vs[k + 1..] {
                gens.push(g_ij(ring, i, j));
            }
        }
    }
    Ideal::new(ring, gens)
}

/// `I_{K_n}` on vertices `1..=n`.
pub fn build_ikn(n: usize, ring: &Ring) -> Result<Ideal> {
    build_ikn_on(VertexSet::full(n), ring)
}

/// `I_{K_{m,n-m}}` with blocks `{1..m}` and `{m+1..n}`.
pub fn build_ikmn(m: usize, n: usize, ring: &Ring) -> Result<Ideal> {
    if m == 0 || m >= n {
        return Err(Error::Precondition(format!("need 1 <= m < n, got m={m}, n={n}")));
    }
    let a = VertexSet::full(m);
    build_ikmn_on(a, VertexSet::full(n).difference(a), ring)
}

/// Combinatorial description of `Q_S(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeComponent {
    #[serde(rename = "S")]
    pub s: VertexSet,
    pub n: usize,
    pub comps: Vec<ComponentData>,
    pub height: usize,
}

impl PrimeComponent {
    pub fn new(g: &Graph, s: VertexSet) -> Self {
        let comps = g.components(s);
        let b = comps.iter().filter(|c| c.is_bipartite).count();
        PrimeComponent { s, n: g.n(), height: s.len() + g.n() - b, comps }
    }

    pub fn bipartite_count(&self) -> usize {
        self.comps.iter().filter(|c| c.is_bipartite).count()
    }

    /// Krull dimension `2n - height` of the quotient by `Q_S`.
    pub fn dim(&self) -> usize {
        2 * self.n - self.height
    }
}

/// `Q_S(G)`: the variables of `S` together with `I_{K̃}` for each component
/// of `G \ S`.
pub fn build_qs(g: &Graph, s: VertexSet, ring: &Ring) -> Result<(Ideal, PrimeComponent)> {
    check_ring(g, ring, Some(2))?;
    check_vertices(ring, s)?;
    let pc = PrimeComponent::new(g, s);
    let mut gens = Vec::new();
    for i in s.iter() {
        gens.push(var(ring, ring.x(i)));
        gens.push(var(ring, ring.y(i)));
    }
    for c in &pc.comps {
        let part = match c.blocks {
            Some((a, b)) if !b.is_empty() => build_ikmn_on(a, b, ring)?,
            Some(_) => continue,
            None => build_ikn_on(c.vertices, ring)?,
        };
        gens.extend(part.gens().iter().cloned());
    }
    Ok((Ideal::new(ring, gens)?, pc))
}

/// `x_i -> x_i - y_i`, `y_i -> c (x_i + y_i)` with `c^2 = -1`.
pub fn phi_transform(ideal: &Ideal, c: &Coeff) -> Result<Ideal> {
    let ring = ideal.ring();
    let field = ring.field();
    if field.characteristic() == 2 {
        return Err(Error::Precondition("φ needs characteristic different from 2".into()));
    }
    if !field.has_sqrt_minus_one() {
        return Err(Error::Precondition(format!("{field} has no square root of -1")));
    }
    if c.field() != field || &(c * c) != &field.from_i64(-1) {
        return Err(Error::InvalidInput(format!("{c} is not a square root of -1 in {field}")));
    }
    if ring.width() != 2 {
        return Err(Error::Precondition("expected 2 coordinates per vertex".into()));
    }
    let mut assignment = vec![None; ring.num_vars()];
    for i in 1..=ring.n() {
        let (x, y) = (var(ring, ring.x(i)), var(ring, ring.y(i)));
        assignment[ring.x(i)] = Some(x.sub(&y));
        assignment[ring.y(i)] = Some(x.add(&y).scale(c));
    }
    ideal.map(&assignment, ring)
}
