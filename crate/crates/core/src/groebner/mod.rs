//! Independent symbolic oracle: multivariate division, S-polynomials,
//! Buchberger's algorithm and reduced Gröbner bases under lex orders.
//!
//! All computations run in the native lex order of [`Polynomial`]. A
//! non-native [`MonomialOrder`] is handled by renaming variables so that its
//! priority list becomes native, computing, and renaming back.

mod ideal;
mod monomial_ideal;

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::RingContext;

pub use ideal::{order_from_names, Ideal, IdealJson, ReducedGbJson, RingJson};
pub use monomial_ideal::{monomial_ideal_stats, MonomialIdealStats};

/// Environment variable overriding the default oracle caps
/// (`<max_basis>` or `<max_basis>,<max_pairs>`).
pub const BUDGET_ENV: &str = "LSS_BUDGET";

/// Resource caps for a single Buchberger run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_basis: usize,
    pub max_pairs: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_basis: 20_000, max_pairs: 5_000_000 }
    }
}

impl Budget {
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(s) => s.parse(),
            Err(_) => Ok(Budget::default()),
        }
    }
}

impl std::str::FromStr for Budget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidInput(format!("bad budget `{s}`"));
        let mut parts = s.split(',').map(|p| p.trim().parse::<usize>());
        let max_basis = parts.next().ok_or_else(bad)?.map_err(|_| bad())?;
        let max_pairs = match parts.next() {
            Some(p) => p.map_err(|_| bad())?,
            None => Budget::default().max_pairs,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(Budget { max_basis, max_pairs })
    }
}

/// The monic reduced Gröbner basis of an ideal under a fixed order.
///
/// Elements are sorted by decreasing leading monomial, which makes the basis
/// canonical: two ideals are equal iff their reduced bases are identical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGB {
    basis: Vec<Polynomial>,
    order: MonomialOrder,
}

impl ReducedGB {
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| leading_under(g, &self.order).0.clone()).collect()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        normal_form(p, &self.basis, &self.order)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.normal_form(p).is_zero()
    }
}

/// Leading term of a nonzero polynomial under an arbitrary order.
pub fn leading_under<'a>(
    p: &'a Polynomial,
    ord: &MonomialOrder,
) -> &'a (Monomial, crate::field::Coeff) {
    if ord.is_native() {
        return p.leading_term().expect("leading term of zero polynomial");
    }
    p.terms()
        .iter()
        .max_by(|a, b| ord.compare(&a.0, &b.0))
        .expect("leading term of zero polynomial")
}

/// Full reduction in native order; the basis must contain no zero polynomial.
pub(crate) fn reduce_native(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let lms: Vec<&Monomial> = basis.iter().map(|g| g.leading_monomial().unwrap()).collect();
    let mut rest = p.clone();
    let mut rem = Vec::new();
    while let Some((m, c)) = rest.leading_term() {
        match lms.iter().position(|lm| lm.divides(m)) {
            Some(k) => {
                let g = &basis[k];
                let q = m.div(lms[k]).unwrap();
                let qc = c.div(g.leading_coeff().unwrap()).unwrap();
                rest = rest.sub_mul_term(&qc, &q, g);
            }
            None => {
                let mut terms = rest.into_terms();
                rem.push(terms.remove(0));
                rest = Polynomial::from_sorted(p.ring(), terms);
            }
        }
    }
    Polynomial::from_sorted(p.ring(), rem)
}

/// Rename variables so that `ord`'s priority list becomes native order.
fn to_native(polys: &[Polynomial], ord: &MonomialOrder) -> Vec<Polynomial> {
    if ord.is_native() {
        return polys.to_vec();
    }
    let ranks = ord.ranks();
    polys.iter().map(|p| p.permute(&ranks)).collect()
}

fn from_native(polys: Vec<Polynomial>, ord: &MonomialOrder) -> Vec<Polynomial> {
    if ord.is_native() {
        return polys;
    }
    let back = ord.priority().to_vec();
    polys.iter().map(|p| p.permute(&back)).collect()
}

/// Remainder of `p` on division by `basis`: no term of the result is
/// divisible by a leading monomial of the basis.
pub fn normal_form(p: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let basis: Vec<Polynomial> = basis.iter().filter(|g| !g.is_zero()).cloned().collect();
    if ord.is_native() {
        return reduce_native(p, &basis);
    }
    let nb = to_native(&basis, ord);
    let np = to_native(std::slice::from_ref(p), ord);
    from_native(vec![reduce_native(&np[0], &nb)], ord).pop().unwrap()
}

fn s_poly_native(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (fm, fc) = f.leading_term().unwrap();
    let (gm, gc) = g.leading_term().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fc.inv().unwrap(), &l.div(fm).unwrap());
    a.sub_mul_term(&gc.inv().unwrap(), &l.div(gm).unwrap(), g)
}

/// `lcm/LT(f) * f - lcm/LT(g) * g`, i.e. the S-polynomial of the monic
/// normalizations of `f` and `g`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::InvalidInput("S-polynomial of a zero polynomial".into()));
    }
    let n = to_native(&[f.clone(), g.clone()], ord);
    Ok(from_native(vec![s_poly_native(&n[0], &n[1])], ord).pop().unwrap())
}

/// True iff every S-polynomial of `polys` reduces to zero against `polys`.
/// No pair is skipped.
pub fn is_groebner_basis(polys: &[Polynomial], ord: &MonomialOrder) -> bool {
    let basis: Vec<Polynomial> =
        to_native(polys, ord).into_iter().filter(|g| !g.is_zero()).collect();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !reduce_native(&s_poly_native(&basis[i], &basis[j]), &basis).is_zero() {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Pair {
    lcm_degree: u32,
    i: usize,
    j: usize,
}

/// Buchberger's algorithm in native order with the normal selection strategy
/// and both of Buchberger's criteria. Returns a (non-reduced) Gröbner basis.
fn buchberger_native(gens: &[Polynomial], budget: &Budget) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut queue: BTreeSet<Pair> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();

    let push = |basis: &mut Vec<Polynomial>,
                    queue: &mut BTreeSet<Pair>,
                    pending: &mut HashSet<(usize, usize)>,
                    g: Polynomial|
     -> Result<()> {
        if basis.len() >= budget.max_basis {
            return Err(Error::BudgetExhausted(format!(
                "basis exceeded {} polynomials",
                budget.max_basis
            )));
        }
        let j = basis.len();
        let gm = g.leading_monomial().unwrap().clone();
        basis.push(g);
        for i in 0..j {
            let lcm_degree = basis[i].leading_monomial().unwrap().lcm(&gm).degree();
            queue.insert(Pair { lcm_degree, i, j });
            pending.insert((i, j));
        }
        Ok(())
    };

    for g in gens {
        let r = reduce_native(g, &basis);
        if !r.is_zero() {
            push(&mut basis, &mut queue, &mut pending, r.monic())?;
        }
    }

    let mut processed = 0usize;
    while let Some(pair) = queue.pop_first() {
        pending.remove(&(pair.i, pair.j));
        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::BudgetExhausted(format!(
                "more than {} critical pairs",
                budget.max_pairs
            )));
        }
        let mi = basis[pair.i].leading_monomial().unwrap();
        let mj = basis[pair.j].leading_monomial().unwrap();
        if mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].leading_monomial().unwrap().divides(&l)
                && !pending.contains(&key(pair.i, k))
                && !pending.contains(&key(pair.j, k))
        });
        if chain {
            continue;
        }
        let s = s_poly_native(&basis[pair.i], &basis[pair.j]);
        let r = reduce_native(&s, &basis);
        if !r.is_zero() {
            push(&mut basis, &mut queue, &mut pending, r.monic())?;
        }
    }
    Ok(basis)
}

/// Minimalize, tail-reduce and normalize a Gröbner basis (native order).
pub(crate) fn reduce_gb_native(gb: Vec<Polynomial>) -> Vec<Polynomial> {
    let gb: Vec<Polynomial> = gb.into_iter().filter(|g| !g.is_zero()).collect();
    let mut keep: Vec<Polynomial> = Vec::new();
    for (idx, g) in gb.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = gb.iter().enumerate().any(|(k, h)| {
            let hm = h.leading_monomial().unwrap();
            k != idx && hm.divides(lm) && (hm != lm || k < idx)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    let mut out: Vec<Polynomial> = (0..keep.len())
        .map(|i| {
            let others: Vec<Polynomial> =
                keep.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, g)| g.clone()).collect();
            let g = &keep[i];
            let (lm, lc) = g.leading_term().unwrap();
            let tail = Polynomial::from_sorted(g.ring(), g.terms()[1..].to_vec());
            let tail = reduce_native(&tail, &others);
            Polynomial::term(g.ring(), lc.clone(), lm.clone()).add(&tail).monic()
        })
        .collect();
    out.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    out
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `ord`.
pub fn buchberger(gens: &[Polynomial], ord: &MonomialOrder, budget: &Budget) -> Result<ReducedGB> {
    let native = to_native(gens, ord);
    let gb = reduce_gb_native(buchberger_native(&native, budget)?);
    let mut basis = from_native(gb, ord);
    basis.sort_by(|a, b| ord.compare(&leading_under(b, ord).0, &leading_under(a, ord).0));
    Ok(ReducedGB { basis, order: ord.clone() })
}

/// Reduce an already-known Gröbner basis to reduced form without running
/// Buchberger. The caller is responsible for `gb` actually being a basis.
pub fn interreduce(gb: &[Polynomial], ord: &MonomialOrder) -> ReducedGB {
    let mut basis = from_native(reduce_gb_native(to_native(gb, ord)), ord);
    basis.sort_by(|a, b| ord.compare(&leading_under(b, ord).0, &leading_under(a, ord).0));
    ReducedGB { basis, order: ord.clone() }
}

/// Default lex order `x_1 > ... > x_n > y_1 > ... > y_n` of a ring.
pub fn default_order(ring: &RingContext) -> MonomialOrder {
    MonomialOrder::lex(ring.num_vars())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::ring::Ring;

    fn ring(n: usize) -> Ring {
        RingContext::new(n, FieldSpec::Rationals)
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn ps(r: &Ring, ss: &[&str]) -> Vec<Polynomial> {
        ss.iter().map(|s| p(r, s)).collect()
    }

    fn ikn3(r: &Ring) -> Vec<Polynomial> {
        ps(
            r,
            &[
                "x1*x2 + y1*y2",
                "x1*x3 + y1*y3",
                "x2*x3 + y2*y3",
                "x1*y2 - x2*y1",
                "x1*y3 - x3*y1",
                "x2*y3 - x3*y2",
                "x1^2 + y1^2",
                "x2^2 + y2^2",
                "x3^2 + y3^2",
            ],
        )
    }

    #[test]
    fn s_polynomials_of_standard_generators() {
        let r = ring(3);
        let ord = default_order(&r);
        // S(h_1, f_12) = -y_1 g_12
        let s = s_polynomial(&p(&r, "x1^2 + y1^2"), &p(&r, "x1*x2 + y1*y2"), &ord).unwrap();
        assert_eq!(s, p(&r, "-y1*(x1*y2 - x2*y1)"));
        // S(f_12, f_13) in I_{K_{1,2}} = -y_1 g_23
        let s = s_polynomial(&p(&r, "x1*x2 + y1*y2"), &p(&r, "x1*x3 + y1*y3"), &ord).unwrap();
        assert_eq!(s, p(&r, "-y1*(x2*y3 - x3*y2)"));
        let f = p(&r, "x1*y2 + 7*y3");
        assert!(s_polynomial(&f, &f, &ord).unwrap().is_zero());
        assert!(s_polynomial(&f, &Polynomial::zero(&r), &ord).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(3);
        let ord = default_order(&r);
        let b12 = p(&r, "x1*y2 + x2*y1");
        assert!(normal_form(&b12, std::slice::from_ref(&b12), &ord).is_zero());
        // x_3 g_12 against Pi of edges {1,3},{2,3}
        let pi = ps(&r, &["x1*y3 + x3*y1", "x2*y3 + x3*y2"]);
        let gb = buchberger(&pi, &ord, &Budget::default()).unwrap();
        assert!(gb.contains(&p(&r, "x3*(x1*y2 - x2*y1)")));
        assert!(!normal_form(&p(&r, "x1"), &ikn3(&r), &ord).is_zero());
    }

    #[test]
    fn single_generator_basis() {
        let r = ring(2);
        let gb = buchberger(&[p(&r, "x1*x2 + y1*y2")], &default_order(&r), &Budget::default())
            .unwrap();
        assert_eq!(gb.basis(), &[p(&r, "x1*x2 + y1*y2")]);
    }

    #[test]
    fn ikn3_initial_ideal() {
        let r = ring(3);
        let ord = default_order(&r);
        let gb = buchberger(&ikn3(&r), &ord, &Budget::default()).unwrap();
        let mut lms: Vec<String> =
            gb.leading_monomials().iter().map(|m| Polynomial::render_monomial(&r, m)).collect();
        lms.sort();
        let mut want: Vec<String> = Vec::new();
        for i in 1..=3 {
            for j in i..=3 {
                want.push(if i == j { format!("x{i}^2") } else { format!("x{i}*x{j}") });
            }
            for j in i + 1..=3 {
                want.push(format!("x{i}*y{j}"));
            }
        }
        want.sort();
        assert_eq!(lms, want);
        assert!(is_groebner_basis(&ikn3(&r), &ord));
    }

    #[test]
    fn canonical_under_shuffle_and_order_change() {
        let r = ring(3);
        let ord = default_order(&r);
        let g = ikn3(&r);
        let a = buchberger(&g, &ord, &Budget::default()).unwrap();
        let mut rev = g.clone();
        rev.reverse();
        assert_eq!(a, buchberger(&rev, &ord, &Budget::default()).unwrap());

        // y-first lex: different basis, same ideal
        let yfirst = MonomialOrder::with_priority(vec![3, 4, 5, 0, 1, 2]).unwrap();
        let b = buchberger(&g, &yfirst, &Budget::default()).unwrap();
        assert!(is_groebner_basis(b.basis(), &yfirst));
        for f in a.basis() {
            assert!(b.contains(f));
        }
        for f in b.basis() {
            assert!(a.contains(f));
        }
        // y_1 divides no leading monomial under x-first lex, x_1 none under y-first
        assert!(a.leading_monomials().iter().all(|m| m.exponents()[r.y(1)] == 0));
        assert!(b.leading_monomials().iter().all(|m| m.exponents()[r.x(1)] == 0));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let r = ring(3);
        let tiny = Budget { max_basis: 3, max_pairs: 10 };
        let err = buchberger(&ikn3(&r), &default_order(&r), &tiny).unwrap_err();
        assert!(matches!(err, Error::BudgetExhausted(_)));
        assert_eq!("7".parse::<Budget>().unwrap().max_basis, 7);
        assert_eq!("7,9".parse::<Budget>().unwrap(), Budget { max_basis: 7, max_pairs: 9 });
        assert!("x".parse::<Budget>().is_err());
    }

    #[test]
    fn unit_and_zero_ideals() {
        let r = ring(1);
        let ord = default_order(&r);
        let gb = buchberger(&ps(&r, &["x1", "x1 + 1"]), &ord, &Budget::default()).unwrap();
        assert!(gb.is_unit());
        let gb = buchberger(&[Polynomial::zero(&r)], &ord, &Budget::default()).unwrap();
        assert!(gb.basis().is_empty());
    }
}
