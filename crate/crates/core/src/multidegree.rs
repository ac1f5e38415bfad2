//! Multidegrees: exponent vectors keyed by vertex name.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{LabeledGraph, VertexId};
use crate::{Error, Result};

/// A monomial `prod y_v^{h_v}` identified with its exponent vector.
/// Zero exponents are never stored, so equal monomials compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multidegree(BTreeMap<String, u32>);

impl Multidegree {
    pub fn zero() -> Self {
        Multidegree(BTreeMap::new())
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, u32)>) -> Self {
        let mut m = Multidegree::zero();
        for (k, e) in pairs {
            m.add_at(&k.into(), e);
        }
        m
    }

    /// The degree `v_e = y_a y_b` of an edge.
    pub fn edge(g: &LabeledGraph, e: usize) -> Self {
        let (a, b) = g.edges()[e];
        Multidegree::from_pairs([(g.name(a), 1), (g.name(b), 1)])
    }

    pub fn from_dense(g: &LabeledGraph, dense: &[u32]) -> Self {
        Multidegree::from_pairs((0..g.vertex_count()).map(|v| (g.name(v), dense[v])))
    }

    /// Dense exponents over the vertex ids of `g`. Fails if the support
    /// leaves the vertex set.
    pub fn to_dense(&self, g: &LabeledGraph) -> Result<Vec<u32>> {
        let mut out = vec![0; g.vertex_count()];
        for (k, &e) in &self.0 {
            out[g.require(k)?] = e;
        }
        Ok(out)
    }

    pub fn get(&self, name: &str) -> u32 {
        self.0.get(name).copied().unwrap_or(0)
    }

    pub fn set(&mut self, name: &str, e: u32) {
        if e == 0 {
            self.0.remove(name);
        } else {
            self.0.insert(name.to_string(), e);
        }
    }

    pub fn add_at(&mut self, name: &str, e: u32) {
        let cur = self.get(name);
        self.set(name, cur + e);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> + '_ {
        self.0.iter().map(|(k, &e)| (k.as_str(), e))
    }

    pub fn support(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.keys().map(String::as_str)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.values().map(|&e| e as u64).sum()
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            out.add_at(k, e);
        }
        out
    }

    pub fn scale(&self, k: u32) -> Multidegree {
        Multidegree::from_pairs(self.iter().map(|(n, e)| (n, e * k)))
    }

    /// Componentwise `self <= other`, i.e. `self` divides `other`.
    pub fn divides(&self, other: &Multidegree) -> bool {
        self.iter().all(|(k, e)| e <= other.get(k))
    }

    /// `self - other`, or `None` if some component would go negative.
    pub fn checked_sub(&self, other: &Multidegree) -> Option<Multidegree> {
        if !other.divides(self) {
            return None;
        }
        let mut out = self.clone();
        for (k, e) in other.iter() {
            let cur = out.get(k);
            out.set(k, cur - e);
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Multidegree) -> Multidegree {
        let mut out = self.clone();
        for (k, e) in other.iter() {
            if e > out.get(k) {
                out.set(k, e);
            }
        }
        out
    }

    /// `self / gcd(self, other)`: the part of `self` not covered by `other`.
    pub fn quotient_by_gcd(&self, other: &Multidegree) -> Multidegree {
        Multidegree::from_pairs(self.iter().map(|(k, e)| (k, e.saturating_sub(other.get(k)))))
    }

    /// Renders as `Θ·rest` when `theta` divides `self`, otherwise plainly.
    pub fn render_with_theta(&self, theta: &Multidegree) -> String {
        if theta.is_zero() {
            return self.to_string();
        }
        match self.checked_sub(theta) {
            Some(rest) if rest.is_zero() => "Θ".to_string(),
            Some(rest) => format!("Θ·{rest}"),
            None => self.to_string(),
        }
    }
}

impl fmt::Display for Multidegree {
    /// `u^2 v w_1`, or `1` for the zero degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, (k, &e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if e == 1 {
                f.write_str(k)?;
            } else {
                write!(f, "{k}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses `u^2 v w_1` (also accepting `*` or `·` as separators); `1` is zero.
impl core::str::FromStr for Multidegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut out = Multidegree::zero();
        if s == "1" || s.is_empty() {
            return Ok(out);
        }
        for tok in s.split(|c: char| c.is_whitespace() || c == '*' || c == '·').filter(|t| !t.is_empty()) {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?),
                None => (tok, 1),
            };
            if name.is_empty() {
                return Err(Error::Parse(format!("missing variable in `{tok}`")));
            }
            out.add_at(name, exp);
        }
        Ok(out)
    }
}

/// Product of all degree-2 vertices.
pub fn theta(g: &LabeledGraph) -> Multidegree {
    Multidegree::from_pairs((0..g.vertex_count()).filter(|&v| g.degree(v) == 2).map(|v| (g.name(v), 1)))
}

/// Product of all edges: vertex `v` gets exponent `deg(v)`.
pub fn big_d(g: &LabeledGraph) -> Multidegree {
    Multidegree::from_pairs((0..g.vertex_count()).map(|v| (g.name(v), g.degree(v) as u32)))
}

pub fn dense_theta(g: &LabeledGraph) -> Vec<u32> {
    (0..g.vertex_count()).map(|v| u32::from(g.degree(v) == 2)).collect()
}

pub fn dense_big_d(g: &LabeledGraph) -> Vec<u32> {
    (0..g.vertex_count()).map(|v| g.degree(v) as u32).collect()
}

/// Convenience for building a degree from dense vertex-id weights.
pub fn from_weights(g: &LabeledGraph, weights: &[(VertexId, u32)]) -> Multidegree {
    let mut dense = vec![0; g.vertex_count()];
    for &(v, w) in weights {
        dense[v] += w;
    }
    Multidegree::from_dense(g, &dense)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_family, FamilySpec};

    #[test]
    fn arithmetic_and_order() {
        let a: Multidegree = "u^2 v".parse().unwrap();
        let b: Multidegree = "u v w".parse().unwrap();
        assert_eq!(a.add(&b).to_string(), "u^3 v^2 w");
        assert!(!b.divides(&a));
        assert_eq!(a.checked_sub(&"u".parse().unwrap()).unwrap().to_string(), "u v");
        assert_eq!(a.checked_sub(&b), None);
        assert_eq!(a.lcm(&b).to_string(), "u^2 v w");
        assert_eq!(a.quotient_by_gcd(&b).to_string(), "u");
        assert_eq!(Multidegree::zero().to_string(), "1");
        assert_eq!("1".parse::<Multidegree>().unwrap(), Multidegree::zero());
        let mut c = a.clone();
        c.set("u", 0);
        assert_eq!(c.to_string(), "v");
        assert!("u^x".parse::<Multidegree>().is_err());
    }

    #[test]
    fn theta_and_d_of_a_bowtie() {
        let g = build_family(&FamilySpec::CompactA { petals: vec![1, 1] }).unwrap();
        assert_eq!(theta(&g).to_string(), "u_1_1 u_1_2 u_2_1 u_2_2");
        assert_eq!(big_d(&g).to_string(), "u^4 u_1_1^2 u_1_2^2 u_2_1^2 u_2_2^2");
        let t = theta(&g);
        assert_eq!(big_d(&g).render_with_theta(&t.scale(2)), "Θ·u^4");
    }
}
