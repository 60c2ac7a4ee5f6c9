//! Quivers with potentials.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::jacobian::{jacobian_relations, PresentedAlgebra};
use crate::potential::{homogeneous_degree, Homogeneity, Potential};
use crate::quiver::{GradedQuiver, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qp {
    pub quiver: Quiver,
    pub potential: Potential,
    /// Arrow degrees, when the QP carries a grading.
    pub degrees: Option<Vec<i64>>,
}

impl Qp {
    pub fn new(quiver: Quiver, potential: Potential) -> Qp {
        Qp { quiver, potential, degrees: None }
    }

    pub fn graded(&self) -> Option<GradedQuiver> {
        self.degrees.as_ref().map(|d| GradedQuiver { quiver: self.quiver.clone(), degrees: d.clone() })
    }

    pub fn homogeneity(&self) -> Option<Homogeneity> {
        self.degrees.as_ref().map(|d| homogeneous_degree(&self.potential, d))
    }

    pub fn jacobian(&self, l_max: usize) -> Result<PresentedAlgebra> {
        let rels = jacobian_relations(&self.quiver, &self.potential)?;
        PresentedAlgebra::compute(self.quiver.clone(), rels, l_max)
    }

    pub fn specialize(&self, value: &BigRational) -> Result<Qp> {
        Ok(Qp { quiver: self.quiver.clone(), potential: self.potential.specialize(value)?, degrees: self.degrees.clone() })
    }

    pub fn is_rational(&self) -> bool {
        self.potential.is_rational()
    }

    /// Structural checks shared by every QP input: no loops, no 2-cycles.
    pub fn check_reduced(&self) -> Result<()> {
        if let Some(a) = self.quiver.arrows().iter().find(|a| a.source == a.target) {
            return Err(Error::LoopAtVertex(a.source + 1));
        }
        if let Some(&(i, _)) = self.quiver.two_cycles().first() {
            return Err(Error::Degenerate(format!(
                "2-cycle through `{}`",
                self.quiver.arrow(i).name
            )));
        }
        Ok(())
    }
}
