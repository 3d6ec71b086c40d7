//! Named strategy lookup for the pluggable algorithms.

use crate::error::{PfError, Result};
use crate::linalg::{BareissSolver, Berkowitz, DetStrategy, KernelSolver, Laplace, ModularSolver};

pub trait Named {
    fn strategy_name(&self) -> &'static str;
}

impl Named for dyn DetStrategy {
    fn strategy_name(&self) -> &'static str {
        self.name()
    }
}

impl Named for dyn KernelSolver {
    fn strategy_name(&self) -> &'static str {
        self.name()
    }
}

/// Strategies of one kind, looked up by name.
pub struct Registry<T: ?Sized + Named> {
    entries: Vec<Box<T>>,
}

impl<T: ?Sized + Named> Default for Registry<T> {
    fn default() -> Self {
        Registry { entries: Vec::new() }
    }
}

impl<T: ?Sized + Named> Registry<T> {
    pub fn register(&mut self, s: Box<T>) {
        self.entries.retain(|e| e.strategy_name() != s.strategy_name());
        self.entries.push(s);
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|e| e.strategy_name() == name)
            .map(|b| b.as_ref())
            .ok_or_else(|| PfError::UnknownStrategy(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.strategy_name()).collect()
    }
}

pub fn det_strategies() -> Registry<dyn DetStrategy> {
    let mut r: Registry<dyn DetStrategy> = Registry::default();
    r.register(Box::new(Berkowitz));
    r.register(Box::new(Laplace));
    r
}

pub fn kernel_solvers() -> Registry<dyn KernelSolver> {
    let mut r: Registry<dyn KernelSolver> = Registry::default();
    r.register(Box::new(BareissSolver));
    r.register(Box::new(ModularSolver::default()));
    r
}

/// Default determinant strategy.
pub fn default_det() -> &'static dyn DetStrategy {
    &Berkowitz
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookup() {
        let d = det_strategies();
        assert_eq!(d.names(), vec!["berkowitz", "laplace"]);
        assert_eq!(d.get("laplace").unwrap().name(), "laplace");
        assert!(matches!(kernel_solvers().get("gauss"), Err(PfError::UnknownStrategy(_))));
    }
}
