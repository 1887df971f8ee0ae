//! Exact rational points on the components `V_S` of the variety of
//! orthogonal representations in the plane.
//!
//! A sample for `(Ḡ, S)` sends `S` and every non-bipartite component of
//! `Ḡ \ S` to the origin, and each bipartite component onto a pair of
//! orthogonal lines: the first block onto the line spanned by `(a, b)`, the
//! second onto the line spanned by `(-b, a)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::builders::build_lg;
use crate::field::{Coeff, FieldSpec};
use crate::graph::{ComponentData, Graph, VertexSet};
use crate::ring::RingContext;

/// 64-bit linear congruential generator,
/// `state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64)`.
#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const A: u64 = 6364136223846793005;
    pub const C: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_mul(Self::A).wrapping_add(Self::C);
        self.state
    }

    /// Uniform-ish in `lo..=hi`, taken from the high bits.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + ((self.next_u64() >> 32) % span) as i64
    }

    /// `p/q` with `p ∈ [-5, 5]`, `q ∈ [1, 4]`.
    pub fn small_rational(&mut self) -> BigRational {
        let p = self.range(-5, 5);
        let q = self.range(1, 4);
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }
}

pub type Point = (BigRational, BigRational);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationSample {
    pub s: VertexSet,
    /// `assignment[v - 1]` is the image of vertex `v`.
    pub assignment: Vec<Point>,
    pub comps: Vec<ComponentData>,
}

fn zero_point() -> Point {
    (BigRational::zero(), BigRational::zero())
}

/// A seeded point of `V_S` for the graph `gbar`.
pub fn sample_vs(gbar: &Graph, s: VertexSet, seed: u64) -> RepresentationSample {
    let mut rng = Lcg::new(seed);
    let comps = gbar.components(s);
    let mut assignment = vec![zero_point(); gbar.n()];
    for c in &comps {
        let Some((first, second)) = c.blocks else { continue };
        let (a, b) = loop {
            let d = (rng.small_rational(), rng.small_rational());
            if !(d.0.is_zero() && d.1.is_zero()) {
                break d;
            }
        };
        for v in c.vertices.iter() {
            let lambda = rng.small_rational();
            assignment[v - 1] = if first.contains(v) {
                (&lambda * &a, &lambda * &b)
            } else {
                debug_assert!(second.contains(v));
                (-&lambda * &b, &lambda * &a)
            };
        }
    }
    RepresentationSample { s, assignment, comps }
}

/// The zero representation, which lies in every `V_S`.
pub fn zero_representation(gbar: &Graph, s: VertexSet) -> RepresentationSample {
    RepresentationSample { s, assignment: vec![zero_point(); gbar.n()], comps: gbar.components(s) }
}

/// Every generator of `L_Ḡ` vanishes at the sample, by exact evaluation.
pub fn check_vanishing(sample: &RepresentationSample, gbar: &Graph) -> bool {
    let ring = RingContext::new(gbar.n(), FieldSpec::Rationals);
    let lg = build_lg(gbar, &ring).expect("ring built for this graph");
    let mut point = vec![Coeff::Rational(BigRational::zero()); ring.num_vars()];
    for v in 1..=gbar.n() {
        let (x, y) = &sample.assignment[v - 1];
        point[ring.x(v)] = Coeff::Rational(x.clone());
        point[ring.y(v)] = Coeff::Rational(y.clone());
    }
    lg.gens().iter().all(|g| g.evaluate(&point).is_zero())
}

fn det(p: &Point, q: &Point) -> BigRational {
    &p.0 * &q.1 - &p.1 * &q.0
}

fn dot(p: &Point, q: &Point) -> BigRational {
    &p.0 * &q.0 + &p.1 * &q.1
}

/// Points of `S` and of non-bipartite components are zero; within a
/// bipartite component each block lies on one line through the origin and
/// the two blocks are orthogonal.
pub fn orthogonal_lines_hold(sample: &RepresentationSample) -> bool {
    let at = |v: usize| &sample.assignment[v - 1];
    let is_zero = |v: usize| at(v).0.is_zero() && at(v).1.is_zero();
    if !sample.s.iter().all(is_zero) {
        return false;
    }
    sample.comps.iter().all(|c| match c.blocks {
        None => c.vertices.iter().all(is_zero),
        Some((a, b)) => {
            let collinear = |blk: VertexSet| {
                blk.iter().all(|u| blk.iter().all(|v| det(at(u), at(v)).is_zero()))
            };
            collinear(a)
                && collinear(b)
                && a.iter().all(|u| b.iter().all(|v| dot(at(u), at(v)).is_zero()))
        }
    })
}

/// `{"S": [...], "assignment": {"1": ["a/b", "c/d"], ...}}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleJson {
    #[serde(rename = "S")]
    pub s: VertexSet,
    pub assignment: BTreeMap<usize, [String; 2]>,
}

impl RepresentationSample {
    pub fn to_json(&self) -> SampleJson {
        SampleJson {
            s: self.s,
            assignment: self
                .assignment
                .iter()
                .enumerate()
                .map(|(k, (x, y))| (k + 1, [x.to_string(), y.to_string()]))
                .collect(),
        }
    }

    /// Largest absolute numerator or denominator, a size indicator for logs.
    pub fn height(&self) -> BigInt {
        self.assignment
            .iter()
            .flat_map(|(x, y)| [x, y])
            .flat_map(|q| [q.numer().abs(), q.denom().clone()])
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}
