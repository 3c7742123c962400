//! Dual-basis strategies behind one trait, looked up by name at runtime.

use crate::error::{AdegError, Result};
use crate::jets::{dual_basis_node, dual_basis_small, dual_basis_specialized_zero, DualBasis, ElementMode};
use crate::poly::TruncatedPoly;

pub const EXPLICIT_SMALL: &str = "explicit-small";
pub const NODE: &str = "node";
pub const ZERO_SPECIALIZED: &str = "zero-specialized";

/// A way of producing the rows of a degeneracy matrix for a germ.
pub trait BasisStrategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    /// Coordinates in which random elements should be drawn.
    fn element_mode(&self) -> ElementMode;

    /// Rejects germs or orders the strategy cannot handle.
    fn check(&self, germ: &TruncatedPoly, m: usize) -> Result<()>;

    /// Builds the basis at truncation n. `germ` must be an exact polynomial.
    fn build(&self, germ: &TruncatedPoly, m: usize, n: u32) -> Result<DualBasis>;
}

struct ExplicitSmall;

impl BasisStrategy for ExplicitSmall {
    fn name(&self) -> &'static str {
        EXPLICIT_SMALL
    }

    fn description(&self) -> &'static str {
        "closed-form functionals for orders 1..=4, any germ"
    }

    fn element_mode(&self) -> ElementMode {
        ElementMode::AbConstant
    }

    fn check(&self, _germ: &TruncatedPoly, m: usize) -> Result<()> {
        if (1..=4).contains(&m) {
            Ok(())
        } else {
            Err(AdegError::Unsupported(format!("{EXPLICIT_SMALL} handles orders 1..=4, not {m}")))
        }
    }

    fn build(&self, germ: &TruncatedPoly, m: usize, n: u32) -> Result<DualBasis> {
        dual_basis_small(germ, m, n)
    }
}

struct Node;

impl BasisStrategy for Node {
    fn name(&self) -> &'static str {
        NODE
    }

    fn description(&self) -> &'static str {
        "u,v functionals for the node xy, any order"
    }

    fn element_mode(&self) -> ElementMode {
        ElementMode::UvCoeffs
    }

    fn check(&self, germ: &TruncatedPoly, m: usize) -> Result<()> {
        let terms: Vec<_> = germ.terms().collect();
        if terms.len() != 1 || terms[0].0 != (1, 1) {
            return Err(AdegError::Unsupported(format!("{NODE} basis needs the germ c*x*y, got {germ}")));
        }
        if m == 0 {
            return Err(AdegError::Usage("order must be at least 1".into()));
        }
        Ok(())
    }

    fn build(&self, germ: &TruncatedPoly, m: usize, n: u32) -> Result<DualBasis> {
        dual_basis_node(m, germ.field(), n)
    }
}

struct ZeroSpecialized;

impl BasisStrategy for ZeroSpecialized {
    fn name(&self) -> &'static str {
        ZERO_SPECIALIZED
    }

    fn description(&self) -> &'static str {
        "top-row functionals (-1)^j f_y^i f_x^j, any germ and order"
    }

    fn element_mode(&self) -> ElementMode {
        ElementMode::AbConstant
    }

    fn check(&self, _germ: &TruncatedPoly, m: usize) -> Result<()> {
        if m == 0 {
            return Err(AdegError::Usage("order must be at least 1".into()));
        }
        Ok(())
    }

    fn build(&self, germ: &TruncatedPoly, m: usize, n: u32) -> Result<DualBasis> {
        dual_basis_specialized_zero(germ, m, n)
    }
}

pub struct StrategyRegistry {
    entries: Vec<Box<dyn BasisStrategy>>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry { entries: Vec::new() }
    }

    pub fn with_defaults() -> Self {
        let mut r = Self::empty();
        for s in [Box::new(ExplicitSmall) as Box<dyn BasisStrategy>, Box::new(Node), Box::new(ZeroSpecialized)] {
            r.register(s).expect("default names are distinct");
        }
        r
    }

    pub fn register(&mut self, s: Box<dyn BasisStrategy>) -> Result<()> {
        if self.entries.iter().any(|e| e.name() == s.name()) {
            return Err(AdegError::Usage(format!("strategy '{}' is already registered", s.name())));
        }
        self.entries.push(s);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&dyn BasisStrategy> {
        self.entries
            .iter()
            .find(|e| e.name() == name)
            .map(|b| b.as_ref())
            .ok_or_else(|| AdegError::Usage(format!("unknown basis '{name}' (known: {})", self.names().join(", "))))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn defaults_resolve() {
        let r = StrategyRegistry::with_defaults();
        assert_eq!(r.names(), vec![EXPLICIT_SMALL, NODE, ZERO_SPECIALIZED]);
        assert!(r.get("nope").is_err());
    }

    #[test]
    fn duplicate_rejected() {
        let mut r = StrategyRegistry::with_defaults();
        assert!(r.register(Box::new(Node)).is_err());
    }

    #[test]
    fn node_requires_node() {
        let f = PrimeField::default();
        let cusp = TruncatedPoly::exact(f, [((0, 2), 1), ((3, 0), f.from_i64(-1))]);
        assert!(StrategyRegistry::with_defaults().get(NODE).unwrap().check(&cusp, 3).is_err());
    }
}
