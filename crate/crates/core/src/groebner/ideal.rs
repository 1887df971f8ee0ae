use serde::{Deserialize, Serialize};

use super::{buchberger, default_order, Budget, ReducedGB};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::MonomialOrder;
use crate::poly::{same_ring, Polynomial};
use crate::ring::{Ring, RingContext};

/// An ideal given by a (not necessarily minimal) list of generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Ideal { ring: ring.clone(), gens })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), gens: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    /// Sum of ideals.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal { ring: self.ring.clone(), gens })
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn groebner(&self, budget: &Budget) -> Result<ReducedGB> {
        buchberger(&self.gens, &default_order(&self.ring), budget)
    }

    pub fn groebner_under(&self, ord: &MonomialOrder, budget: &Budget) -> Result<ReducedGB> {
        if ord.nvars() != self.ring.num_vars() {
            return Err(Error::InvalidInput("order does not match the ring".into()));
        }
        buchberger(&self.gens, ord, budget)
    }

    pub fn contains_poly(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner(budget)?.contains(f))
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        self.check(other)?;
        let gb = self.groebner(budget)?;
        Ok(other.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn equals(&self, other: &Ideal, budget: &Budget) -> Result<bool> {
        self.check(other)?;
        Ok(self.groebner(budget)? == other.groebner(budget)?)
    }

    /// `self ∩ other` via elimination of `t` from `t·self + (1 - t)·other`.
    /// The returned generators form a Gröbner basis of the intersection.
    pub fn intersect(&self, other: &Ideal, budget: &Budget) -> Result<Ideal> {
        self.check(other)?;
        let ext = self.ring.with_aux(&["t"]);
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = Polynomial::one(&ext).sub(&t);
        let mut gens: Vec<Polynomial> =
            self.gens.iter().map(|f| t.mul(&f.extend_front(&ext, 1))).collect();
        gens.extend(other.gens.iter().map(|g| one_minus_t.mul(&g.extend_front(&ext, 1))));
        let gb = buchberger(&gens, &default_order(&ext), budget)?;
        let gens = gb.basis().iter().filter_map(|g| g.strip_front(&self.ring, 1)).collect();
        Ok(Ideal { ring: self.ring.clone(), gens })
    }

    /// `self : (f)`, computed as `(self ∩ (f)) / f`.
    pub fn quotient_by(&self, f: &Polynomial, budget: &Budget) -> Result<Ideal> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::InvalidInput("quotient by the zero polynomial".into()));
        }
        let principal = Ideal { ring: self.ring.clone(), gens: vec![f.clone()] };
        let meet = self.intersect(&principal, budget)?;
        let gens = meet
            .gens
            .iter()
            .map(|g| g.exact_div(f).expect("generators of I ∩ (f) are multiples of f"))
            .collect();
        Ok(Ideal { ring: self.ring.clone(), gens })
    }

    /// `f ∈ √self`, decided by `1 ∈ self + (1 - t·f)`.
    pub fn radical_member(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(Error::RingMismatch);
        }
        let ext = self.ring.with_aux(&["t"]);
        let t = Polynomial::var(&ext, 0);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.extend_front(&ext, 1)).collect();
        gens.push(Polynomial::one(&ext).sub(&t.mul(&f.extend_front(&ext, 1))));
        Ok(buchberger(&gens, &default_order(&ext), budget)?.is_unit())
    }

    /// Image under a ring map given by variable images.
    pub fn map(&self, assignment: &[Option<Polynomial>], target: &Ring) -> Result<Ideal> {
        let gens =
            self.gens.iter().map(|g| g.substitute(assignment, target)).collect::<Result<_>>()?;
        Ok(Ideal { ring: target.clone(), gens })
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            ring: RingJson { n: self.ring.n(), field: self.ring.field() },
            gens: self.gens.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(json: &IdealJson) -> Result<Ideal> {
        let ring = RingContext::new(json.ring.n, json.ring.field);
        let gens =
            json.gens.iter().map(|s| Polynomial::parse(&ring, s)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal { ring, gens })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub n: usize,
    pub field: FieldSpec,
}

/// `{"ring": {"n": .., "field": "Q" | "Fp:<p>"}, "gens": [..]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub ring: RingJson,
    pub gens: Vec<String>,
}

/// Ideal JSON plus the order's priority list (variable names, highest first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedGbJson {
    pub ring: RingJson,
    pub gens: Vec<String>,
    pub order: Vec<String>,
}

impl ReducedGB {
    pub fn to_json(&self, ring: &RingContext) -> ReducedGbJson {
        ReducedGbJson {
            ring: RingJson { n: ring.n(), field: ring.field() },
            gens: self.basis().iter().map(|g| g.to_string()).collect(),
            order: self.order().priority().iter().map(|&v| ring.var_name(v)).collect(),
        }
    }
}

/// Parse an order given as a list of variable names, highest first.
pub fn order_from_names(ring: &RingContext, names: &[String]) -> Result<MonomialOrder> {
    let priority = names
        .iter()
        .map(|n| {
            ring.var_index(n).ok_or_else(|| Error::InvalidInput(format!("unknown variable `{n}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    if priority.len() != ring.num_vars() {
        return Err(Error::InvalidInput("order must list every variable once".into()));
    }
    MonomialOrder::with_priority(priority)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize, field: FieldSpec) -> Ring {
        RingContext::new(n, field)
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|s| Polynomial::parse(r, s).unwrap()).collect()).unwrap()
    }

    const IKN3: [&str; 9] = [
        "x1*x2 + y1*y2",
        "x1*x3 + y1*y3",
        "x2*x3 + y2*y3",
        "x1*y2 - x2*y1",
        "x1*y3 - x3*y1",
        "x2*y3 - x3*y2",
        "x1^2 + y1^2",
        "x2^2 + y2^2",
        "x3^2 + y3^2",
    ];

    #[test]
    fn quotient_by_variable_is_trivial_for_ikn() {
        let r = ring(3, FieldSpec::Rationals);
        let i = ideal(&r, &IKN3);
        let b = Budget::default();
        let q = i.quotient_by(&Polynomial::var(&r, r.x(1)), &b).unwrap();
        assert!(q.equals(&i, &b).unwrap());
        assert!(i.quotient_by(&Polynomial::zero(&r), &b).is_err());
    }

    #[test]
    fn quotient_detects_zero_divisors() {
        let r = ring(1, FieldSpec::Rationals);
        let i = ideal(&r, &["x1*y1"]);
        let q = i.quotient_by(&Polynomial::var(&r, r.x(1)), &Budget::default()).unwrap();
        assert!(q.equals(&ideal(&r, &["y1"]), &Budget::default()).unwrap());
    }

    #[test]
    fn ikn3_splits_over_f5() {
        let r = ring(3, FieldSpec::PrimeField(5));
        let b = Budget::default();
        let p1 = ideal(&r, &["x1 + 2*y1", "x2 + 2*y2", "x3 + 2*y3"]);
        let p2 = ideal(&r, &["x1 - 2*y1", "x2 - 2*y2", "x3 - 2*y3"]);
        let meet = p1.intersect(&p2, &b).unwrap();
        assert!(meet.equals(&ideal(&r, &IKN3), &b).unwrap());
    }

    #[test]
    fn radical_membership_in_char_two() {
        let r = ring(3, FieldSpec::PrimeField(2));
        let i = ideal(&r, &IKN3);
        let b = Budget::default();
        for k in 1..=3 {
            let f = Polynomial::parse(&r, &format!("x{k} + y{k}")).unwrap();
            assert!(i.radical_member(&f, &b).unwrap());
            assert!(!i.contains_poly(&f, &b).unwrap());
        }
        assert!(!i.radical_member(&Polynomial::var(&r, r.x(1)), &b).unwrap());
    }

    #[test]
    fn intersection_is_contained_in_both() {
        let r = ring(2, FieldSpec::Rationals);
        let b = Budget::default();
        let i = ideal(&r, &["x1", "y2^2"]);
        let j = ideal(&r, &["x1*x2 + y1*y2", "y2"]);
        let m = i.intersect(&j, &b).unwrap();
        assert!(i.contains_ideal(&m, &b).unwrap());
        assert!(j.contains_ideal(&m, &b).unwrap());
        for f in i.gens() {
            for g in j.gens() {
                assert!(m.contains_poly(&f.mul(g), &b).unwrap());
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let r = ring(2, FieldSpec::PrimeField(7));
        let i = ideal(&r, &["x1*x2 + y1*y2", "3*x1 - y2"]);
        let s = serde_json::to_string(&i.to_json()).unwrap();
        assert!(s.contains("\"field\":\"Fp:7\""));
        let back = Ideal::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, i);
    }

    #[test]
    fn named_orders() {
        let r = ring(1, FieldSpec::Rationals);
        let ord = order_from_names(&r, &["y1".into(), "x1".into()]).unwrap();
        assert_eq!(ord.priority(), &[1, 0]);
        assert!(order_from_names(&r, &["y1".into()]).is_err());
        assert!(order_from_names(&r, &["y1".into(), "z".into()]).is_err());
    }
}
