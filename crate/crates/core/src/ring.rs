use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FieldSpec;

/// The polynomial ring `K[aux.., x_1..x_n, y_1..y_n]`.
///
/// Variables are positional. Auxiliary variables (elimination parameters such
/// as `t`) occupy the leading indices, followed by `width` coordinate blocks of
/// `n` variables each. With the default width 2 the blocks are named `x` and
/// `y`; wider rings (general `d`) use `x{i}_{k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingContext {
    n: usize,
    width: usize,
    aux: Vec<String>,
    field: FieldSpec,
}

pub type Ring = Arc<RingContext>;

impl RingContext {
    pub fn new(n: usize, field: FieldSpec) -> Ring {
        Arc::new(RingContext { n, width: 2, aux: Vec::new(), field })
    }

    /// A ring with `d` coordinates per vertex.
    pub fn with_width(n: usize, d: usize, field: FieldSpec) -> Result<Ring> {
        if d == 0 {
            return Err(Error::InvalidInput("coordinate width must be positive".into()));
        }
        Ok(Arc::new(RingContext { n, width: d, aux: Vec::new(), field }))
    }

    /// The same ring with `names` prepended as highest-priority variables.
    pub fn with_aux(&self, names: &[&str]) -> Ring {
        let mut aux: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        aux.extend(self.aux.iter().cloned());
        Arc::new(RingContext { aux, ..self.clone() })
    }

    /// The same ring with the leading `k` auxiliary variables removed.
    pub fn drop_aux(&self, k: usize) -> Ring {
        Arc::new(RingContext { aux: self.aux[k..].to_vec(), ..self.clone() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_aux(&self) -> usize {
        self.aux.len()
    }

    pub fn num_vars(&self) -> usize {
        self.aux.len() + self.width * self.n
    }

    /// Index of coordinate `k` (0-based) of vertex `i` (1-based).
    pub fn var(&self, i: usize, k: usize) -> usize {
        debug_assert!((1..=self.n).contains(&i) && k < self.width);
        self.aux.len() + k * self.n + (i - 1)
    }

    pub fn x(&self, i: usize) -> usize {
        self.var(i, 0)
    }

    pub fn y(&self, i: usize) -> usize {
        self.var(i, 1)
    }

    /// `(vertex, coordinate)` of a graph variable, `None` for auxiliaries.
    pub fn vertex_of(&self, idx: usize) -> Option<(usize, usize)> {
        let off = idx.checked_sub(self.aux.len())?;
        (off < self.width * self.n).then(|| (off % self.n + 1, off / self.n))
    }

    pub fn var_name(&self, idx: usize) -> String {
        if idx < self.aux.len() {
            return self.aux[idx].clone();
        }
        let (i, k) = self.vertex_of(idx).expect("variable index out of range");
        if self.width == 2 {
            format!("{}{}", if k == 0 { "x" } else { "y" }, i)
        } else {
            format!("x{}_{}", i, k + 1)
        }
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        if let Some(p) = self.aux.iter().position(|a| a == name) {
            return Some(p);
        }
        (0..self.num_vars()).find(|&idx| self.var_name(idx) == name)
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.num_vars()).map(|i| self.var_name(i)).collect();
        write!(f, "{}[{}]", self.field, names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_and_names() {
        let r = RingContext::new(3, FieldSpec::Rationals);
        assert_eq!(r.num_vars(), 6);
        assert_eq!(r.x(1), 0);
        assert_eq!(r.y(1), 3);
        assert_eq!(r.var_name(5), "y3");
        assert_eq!(r.var_index("x2"), Some(1));
        let t = r.with_aux(&["t"]);
        assert_eq!(t.num_vars(), 7);
        assert_eq!(t.x(1), 1);
        assert_eq!(t.var_name(0), "t");
        assert_eq!(t.vertex_of(0), None);
        assert_eq!(t.vertex_of(4), Some((1, 1)));
        assert_eq!(*t.drop_aux(1), *r);
    }

    #[test]
    fn wide_rings() {
        let r = RingContext::with_width(2, 3, FieldSpec::Rationals).unwrap();
        assert_eq!(r.num_vars(), 6);
        assert_eq!(r.var_name(r.var(2, 2)), "x2_3");
        assert!(RingContext::with_width(2, 0, FieldSpec::Rationals).is_err());
    }
}
