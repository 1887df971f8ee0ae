//! Admissible paths and the combinatorial Gröbner basis of the permanental
//! edge ideal `Π_G`, its certification against the Buchberger oracle, and the
//! characteristic-2 non-radicality witness for `L_G`.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::builders::{b_ij, build_lg, build_pig, g_ij};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphJson, VertexSet};
use crate::groebner::{default_order, interreduce, is_groebner_basis, Budget};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// A path `i = i_0, ..., i_r = j`, `i < j`, whose interior avoids `[i, j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AdmissiblePath {
    pub seq: Vec<usize>,
}

impl AdmissiblePath {
    pub fn start(&self) -> usize {
        self.seq[0]
    }

    pub fn end(&self) -> usize {
        *self.seq.last().unwrap()
    }

    pub fn length(&self) -> usize {
        self.seq.len() - 1
    }

    pub fn is_odd(&self) -> bool {
        self.length() % 2 == 1
    }

    pub fn vertices(&self) -> VertexSet {
        self.seq.iter().copied().collect()
    }

    /// Interior vertices above `j` (carrying `x`) and below `i` (carrying `y`).
    pub fn u_sets(&self) -> (VertexSet, VertexSet) {
        let (i, j) = (self.start(), self.end());
        let inner = &self.seq[1..self.seq.len() - 1];
        (inner.iter().copied().filter(|&v| v > j).collect(), inner.iter().copied().filter(|&v| v < i).collect())
    }

    /// `u = ∏_{i_k > j} x_{i_k} ∏_{i_k < i} y_{i_k}`
    pub fn u(&self, ring: &Ring) -> Monomial {
        let (xs, ys) = self.u_sets();
        xy_monomial(ring, xs, ys)
    }
}

impl fmt::Display for AdmissiblePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.seq.iter().map(|v| v.to_string()).collect();
        f.write_str(&s.join("-"))
    }
}

fn xy_monomial(ring: &Ring, xs: VertexSet, ys: VertexSet) -> Monomial {
    Monomial::from_vars(
        ring.num_vars(),
        xs.iter().map(|v| ring.x(v)).chain(ys.iter().map(|v| ring.y(v))),
    )
}

/// All admissible paths from `i` to `j` in lexicographic order.
pub fn admissible_paths(g: &Graph, i: usize, j: usize) -> Result<Vec<AdmissiblePath>> {
    if i >= j || j > g.n() || i == 0 {
        return Err(Error::Precondition(format!("need 1 <= i < j <= n, got ({i}, {j})")));
    }
    let allowed: VertexSet = (1..=g.n()).filter(|&v| v < i || v > j).collect();
    let mut out = Vec::new();
    let mut seq = vec![i];
    walk(g, j, allowed, VertexSet::singleton(i), &mut seq, &mut out);
    out.sort_by(|a: &AdmissiblePath, b| a.seq.cmp(&b.seq));
    Ok(out)
}

fn walk(g: &Graph, target: usize, allowed: VertexSet, used: VertexSet, seq: &mut Vec<usize>, out: &mut Vec<AdmissiblePath>) {
    let last = *seq.last().unwrap();
    for w in g.neighbors(last).iter() {
        if w == target {
            let mut s = seq.clone();
            s.push(w);
            out.push(AdmissiblePath { seq: s });
        } else if allowed.contains(w) && !used.contains(w) {
            seq.push(w);
            walk(g, target, allowed, used.with(w), seq, out);
            seq.pop();
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GbKind {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
    #[serde(rename = "III")]
    TypeIII,
    #[serde(rename = "IV")]
    TypeIV,
}

impl fmt::Display for GbKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GbKind::TypeI => "I",
            GbKind::TypeII => "II",
            GbKind::TypeIII => "III",
            GbKind::TypeIV => "IV",
        })
    }
}

/// A member of the combinatorial basis with the paths that produce it:
/// `[π]` for types I and II, `[π, σ]` for type III, `[π, σ, τ]` for type IV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbElement {
    pub poly: Polynomial,
    pub kind: GbKind,
    pub witnesses: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbOptions {
    /// Drop elements that are monomial multiples of other emitted elements.
    pub prune: bool,
}

impl Default for GbOptions {
    fn default() -> Self {
        GbOptions { prune: true }
    }
}

/// The elements of types (i)-(iv) for `Π_G`, deduplicated, optionally pruned,
/// sorted by kind and then by decreasing leading monomial.
pub fn combinatorial_gb(g: &Graph, ring: &Ring, opts: GbOptions) -> Result<Vec<GbElement>> {
    if ring.n() != g.n() || ring.width() != 2 || ring.num_aux() != 0 {
        return Err(Error::Precondition("ring does not match the graph".into()));
    }
    let mut out: Vec<GbElement> = Vec::new();
    let mut seen: HashSet<Polynomial> = HashSet::new();
    let mut emit = |poly: Polynomial, kind: GbKind, witnesses: Vec<Vec<usize>>| {
        if seen.insert(poly.clone()) {
            out.push(GbElement { poly, kind, witnesses });
        }
    };
    let n = g.n();
    for i in 1..=n {
        for j in i + 1..=n {
            let paths = admissible_paths(g, i, j)?;
            for p in &paths {
                let binomial = if p.is_odd() { b_ij(ring, i, j) } else { g_ij(ring, i, j) };
                let kind = if p.is_odd() { GbKind::TypeI } else { GbKind::TypeII };
                emit(binomial.mul_term(&ring.field().one(), &p.u(ring)), kind, vec![p.seq.clone()]);
            }
            let yi_xj = Monomial::from_vars(ring.num_vars(), [ring.y(i), ring.x(j)]);
            for pi in paths.iter().filter(|p| p.is_odd()) {
                for sigma in paths.iter().filter(|p| !p.is_odd()) {
                    let m = pi.u(ring).lcm(&sigma.u(ring)).mul(&yi_xj);
                    emit(Polynomial::monomial(ring, m), GbKind::TypeIII, vec![pi.seq.clone(), sigma.seq.clone()]);
                    let union = pi.vertices().union(sigma.vertices());
                    for a in union.iter() {
                        let mut tau = vec![a];
                        pendant_paths(g, union, VertexSet::singleton(a), &mut tau, &mut |tau| {
                            let b = *tau.last().unwrap();
                            let w: VertexSet = union.union(tau.iter().copied().collect()).without(b);
                            let m = if w.iter().all(|h| b < h) {
                                xy_monomial(ring, w, VertexSet::singleton(b))
                            } else if w.iter().all(|h| b > h) {
                                xy_monomial(ring, VertexSet::singleton(b), w)
                            } else {
                                return;
                            };
                            emit(
                                Polynomial::monomial(ring, m),
                                GbKind::TypeIV,
                                vec![pi.seq.clone(), sigma.seq.clone(), tau.to_vec()],
                            );
                        });
                    }
                }
            }
        }
    }
    if opts.prune {
        out = prune_multiples(out);
    }
    out.sort_by(|a, b| a.kind.cmp(&b.kind).then_with(|| b.poly.leading_monomial().cmp(&a.poly.leading_monomial())));
    Ok(out)
}

/// Calls `f` on every path `a, ..., b` of length >= 1 whose vertices after
/// `a` all lie outside `blocked`.
fn pendant_paths(g: &Graph, blocked: VertexSet, used: VertexSet, tau: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    let last = *tau.last().unwrap();
    for w in g.neighbors(last).difference(blocked).difference(used).iter() {
        tau.push(w);
        f(tau);
        pendant_paths(g, blocked, used.with(w), tau, f);
        tau.pop();
    }
}

/// True if `p = c·m·q` for a monomial `m` and a scalar `c`.
fn monomial_multiple(p: &Polynomial, q: &Polynomial) -> bool {
    if p.len() != q.len() {
        return false;
    }
    let (pm, pc) = p.leading_term().unwrap();
    let (qm, qc) = q.leading_term().unwrap();
    let Some(m) = pm.div(qm) else { return false };
    let c = pc.div(qc).unwrap();
    &q.mul_term(&c, &m) == p
}

fn prune_multiples(elems: Vec<GbElement>) -> Vec<GbElement> {
    let keep: Vec<bool> = elems
        .iter()
        .enumerate()
        .map(|(k, e)| !elems.iter().enumerate().any(|(l, o)| l != k && monomial_multiple(&e.poly, &o.poly)))
        .collect();
    elems.into_iter().zip(keep).filter_map(|(e, k)| k.then_some(e)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GbCertificate {
    pub is_gb: bool,
    pub reduced_match: bool,
    pub initial_squarefree: bool,
}

impl GbCertificate {
    pub fn all(&self) -> bool {
        self.is_gb && self.reduced_match && self.initial_squarefree
    }
}

/// Check the combinatorial basis against the oracle: all S-pairs reduce to
/// zero, its reduced form equals `buchberger(Π_G)`, and the leading
/// monomials are squarefree.
pub fn gb_certify(g: &Graph, ring: &Ring, budget: &Budget) -> Result<GbCertificate> {
    if ring.field().characteristic() == 2 {
        return Err(Error::Precondition("char 2: GB theorem not applicable".into()));
    }
    let elems = combinatorial_gb(g, ring, GbOptions::default())?;
    certify_elements(g, ring, &elems, budget)
}

pub fn certify_elements(g: &Graph, ring: &Ring, elems: &[GbElement], budget: &Budget) -> Result<GbCertificate> {
    let ord = default_order(ring);
    let polys: Vec<Polynomial> = elems.iter().map(|e| e.poly.clone()).collect();
    let oracle = build_pig(g, ring)?.groebner(budget)?;
    Ok(GbCertificate {
        is_gb: is_groebner_basis(&polys, &ord),
        reduced_match: interreduce(&polys, &ord) == oracle,
        initial_squarefree: polys.iter().all(|p| p.leading_monomial().is_some_and(|m| m.is_squarefree())),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GbElementJson {
    pub kind: GbKind,
    pub poly: String,
    pub witnesses: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GbReport {
    pub graph: GraphJson,
    pub field: String,
    pub elements: Vec<GbElementJson>,
    pub certificate: Option<GbCertificate>,
    pub note: Option<String>,
}

/// The basis of `Π_G` together with its certificate, or a note when the
/// characteristic is 2.
pub fn gb_report(g: &Graph, ring: &Ring, opts: GbOptions, budget: &Budget) -> Result<GbReport> {
    let elems = combinatorial_gb(g, ring, opts)?;
    let (certificate, note) = if ring.field().characteristic() == 2 {
        (None, Some("char 2: GB theorem not applicable; certification skipped".to_string()))
    } else {
        (Some(certify_elements(g, ring, &elems, budget)?), None)
    };
    Ok(GbReport {
        graph: g.to_json(),
        field: ring.field().to_string(),
        elements: elems
            .iter()
            .map(|e| GbElementJson { kind: e.kind, poly: e.poly.to_string(), witnesses: e.witnesses.clone() })
            .collect(),
        certificate,
        note,
    })
}

/// `m·(x_i + y_i)^2 ∈ L_G` while `m·(x_i + y_i) ∉ L_G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Char2Witness {
    pub multiplier: Monomial,
    pub vertex: usize,
}

/// Search `y`-monomials `m` of total degree up to `max_degree` (default
/// `2(n-1)`) for a witness that `L_G` is not radical over `F_2`. `None`
/// means the bound was too small, not that `L_G` is radical.
pub fn char2_nonradical_witness(
    g: &Graph,
    ring: &Ring,
    max_degree: Option<usize>,
    budget: &Budget,
) -> Result<Option<Char2Witness>> {
    if ring.field().characteristic() != 2 {
        return Err(Error::Precondition("the witness search runs over F_2".into()));
    }
    if g.is_bipartite() {
        return Err(Error::Precondition("L_G is radical for bipartite G".into()));
    }
    let gb = build_lg(g, ring)?.groebner(budget)?;
    let n = g.n();
    let bound = max_degree.unwrap_or(2 * n.saturating_sub(1));
    let one = ring.field().one();
    for deg in 0..=bound {
        for exps in compositions(deg, n) {
            let m = Monomial::from_vars(
                ring.num_vars(),
                exps.iter().enumerate().flat_map(|(k, &e)| std::iter::repeat_n(ring.y(k + 1), e)),
            );
            for i in 1..=n {
                let w = Polynomial::var(ring, ring.x(i)).add(&Polynomial::var(ring, ring.y(i)));
                let mw = w.mul_term(&one, &m);
                if gb.contains(&mw.mul(&w)) && !gb.contains(&mw) {
                    return Ok(Some(Char2Witness { multiplier: m, vertex: i }));
                }
            }
        }
    }
    Ok(None)
}

/// Exponent vectors of length `parts` summing to `total`, in reverse lex
/// order.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::RingContext;

    fn ring(n: usize, field: FieldSpec) -> Ring {
        RingContext::new(n, field)
    }

    fn polys(elems: &[GbElement]) -> Vec<String> {
        elems.iter().map(|e| e.poly.to_string()).collect()
    }

    #[test]
    fn path_examples() {
        let p3 = Graph::preset("path:3").unwrap();
        assert!(admissible_paths(&p3, 1, 3).unwrap().is_empty());
        let g = Graph::from_edges(3, &[(1, 3), (2, 3)]).unwrap();
        let ps = admissible_paths(&g, 1, 2).unwrap();
        assert_eq!(ps.len(), 1);
        assert_eq!(ps[0].seq, vec![1, 3, 2]);
        assert!(!ps[0].is_odd());
        let r = ring(3, FieldSpec::Rationals);
        assert_eq!(Polynomial::render_monomial(&r, &ps[0].u(&r)), "x3");
        for (i, j) in Graph::preset("fig3").unwrap().edges() {
            let ps = admissible_paths(&Graph::preset("fig3").unwrap(), i, j).unwrap();
            assert!(ps.iter().any(|p| p.seq == vec![i, j] && p.is_odd() && p.u_sets() == (VertexSet::EMPTY, VertexSet::EMPTY)));
        }
        assert!(admissible_paths(&g, 2, 1).is_err());
    }

    #[test]
    fn triangle_basis() {
        let r = ring(3, FieldSpec::Rationals);
        let c3 = Graph::preset("cycle:3").unwrap();
        let elems = combinatorial_gb(&c3, &r, GbOptions::default()).unwrap();
        let mut got = polys(&elems);
        got.sort();
        let mut want = vec![
            "x1*y2 + x2*y1",
            "x1*y3 + x3*y1",
            "x2*y3 + x3*y2",
            "x1*x3*y2 - x2*x3*y1",
            "x2*y1*y3 - x3*y1*y2",
            "x2*x3*y1",
            "x3*y1*y2",
        ];
        want.sort();
        assert_eq!(got, want);
        assert!(elems.iter().all(|e| e.kind != GbKind::TypeIV));
        let cert = gb_certify(&c3, &r, &Budget::default()).unwrap();
        assert!(cert.all(), "{cert:?}");
    }

    #[test]
    fn small_bases() {
        let r = ring(2, FieldSpec::Rationals);
        let k2 = Graph::preset("complete:2").unwrap();
        assert_eq!(polys(&combinatorial_gb(&k2, &r, GbOptions::default()).unwrap()), ["x1*y2 + x2*y1"]);
        let r3 = ring(3, FieldSpec::Rationals);
        let p3 = Graph::preset("path:3").unwrap();
        assert_eq!(combinatorial_gb(&p3, &r3, GbOptions::default()).unwrap().len(), 2);
    }

    #[test]
    fn five_cycle_certifies() {
        for field in [FieldSpec::Rationals, FieldSpec::PrimeField(3)] {
            let r = ring(5, field);
            let c5 = Graph::preset("cycle:5").unwrap();
            assert!(gb_certify(&c5, &r, &Budget::default()).unwrap().all());
        }
    }

    #[test]
    fn type_four_appears() {
        // a triangle with a pendant edge at the top vertex
        let g = Graph::from_edges(4, &[(1, 2), (1, 3), (2, 3), (1, 4)]).unwrap();
        let r = ring(4, FieldSpec::Rationals);
        let elems = combinatorial_gb(&g, &r, GbOptions { prune: false }).unwrap();
        assert!(elems.iter().any(|e| e.kind == GbKind::TypeIV));
        assert!(gb_certify(&g, &r, &Budget::default()).unwrap().all());
    }

    #[test]
    fn pruning_keeps_the_ideal() {
        let g = Graph::preset("complete:4").unwrap();
        let r = ring(4, FieldSpec::Rationals);
        let full = combinatorial_gb(&g, &r, GbOptions { prune: false }).unwrap();
        let pruned = combinatorial_gb(&g, &r, GbOptions::default()).unwrap();
        assert!(pruned.len() < full.len());
        let ord = default_order(&r);
        let a: Vec<Polynomial> = full.iter().map(|e| e.poly.clone()).collect();
        let b: Vec<Polynomial> = pruned.iter().map(|e| e.poly.clone()).collect();
        assert_eq!(interreduce(&a, &ord), interreduce(&b, &ord));
    }

    #[test]
    fn elements_lie_in_the_ideal() {
        let budget = Budget::default();
        for field in [FieldSpec::Rationals, FieldSpec::PrimeField(3), FieldSpec::PrimeField(5)] {
            for g in Graph::all_on(4) {
                let r = ring(4, field);
                let gb = build_pig(&g, &r).unwrap().groebner(&budget).unwrap();
                for e in combinatorial_gb(&g, &r, GbOptions { prune: false }).unwrap() {
                    assert!(gb.contains(&e.poly), "{g}: {}", e.poly);
                }
            }
        }
    }

    #[test]
    fn binomial_leading_terms_are_squarefree() {
        for g in Graph::all_up_to(5) {
            let r = ring(g.n(), FieldSpec::Rationals);
            for e in combinatorial_gb(&g, &r, GbOptions { prune: false }).unwrap() {
                if matches!(e.kind, GbKind::TypeI | GbKind::TypeII) {
                    let (i, j) = (e.witnesses[0][0], *e.witnesses[0].last().unwrap());
                    let lm = e.poly.leading_monomial().unwrap();
                    assert!(lm.is_squarefree());
                    assert_eq!(lm.exponents()[r.x(i)], 1);
                    assert_eq!(lm.exponents()[r.y(j)], 1);
                }
            }
        }
    }

    #[test]
    fn bipartite_graphs_have_only_binomials() {
        for g in Graph::all_up_to(5).filter(|g| g.is_bipartite()) {
            let r = ring(g.n(), FieldSpec::Rationals);
            let elems = combinatorial_gb(&g, &r, GbOptions { prune: false }).unwrap();
            assert!(elems.iter().all(|e| matches!(e.kind, GbKind::TypeI | GbKind::TypeII)), "{g}");
            for i in 1..=g.n() {
                for j in i + 1..=g.n() {
                    let ps = admissible_paths(&g, i, j).unwrap();
                    assert!(ps.windows(2).all(|w| w[0].is_odd() == w[1].is_odd()), "{g}");
                }
            }
        }
    }

    #[test]
    fn char_two_witnesses() {
        let budget = Budget::default();
        for name in ["cycle:3", "cycle:5"] {
            let g = Graph::preset(name).unwrap();
            let r = ring(g.n(), FieldSpec::PrimeField(2));
            let w = char2_nonradical_witness(&g, &r, None, &budget).unwrap();
            let w = w.unwrap_or_else(|| panic!("no witness for {name}"));
            // re-verify the reported pair with an independent membership test
            let lg = build_lg(&g, &r).unwrap();
            let lin = Polynomial::var(&r, r.x(w.vertex)).add(&Polynomial::var(&r, r.y(w.vertex)));
            let mw = lin.mul_term(&r.field().one(), &w.multiplier);
            assert!(lg.contains_poly(&mw.mul(&lin), &budget).unwrap());
            assert!(!lg.contains_poly(&mw, &budget).unwrap());
        }
        let c4 = Graph::preset("cycle:4").unwrap();
        assert!(char2_nonradical_witness(&c4, &ring(4, FieldSpec::PrimeField(2)), None, &budget).is_err());
        let c3 = Graph::preset("cycle:3").unwrap();
        assert!(char2_nonradical_witness(&c3, &ring(3, FieldSpec::Rationals), None, &budget).is_err());
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn report_in_char_two_skips_certificate() {
        let g = Graph::preset("cycle:4").unwrap();
        let rep = gb_report(&g, &ring(4, FieldSpec::PrimeField(2)), GbOptions::default(), &Budget::default()).unwrap();
        assert!(rep.certificate.is_none());
        assert!(rep.note.unwrap().contains("char 2"));
    }
}
