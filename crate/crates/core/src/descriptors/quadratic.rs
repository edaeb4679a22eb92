use super::frame::DescriptorFrame;
use crate::error::Result;
use crate::fock::{annihilation_op, create_op, FockSpace, MatrixOperator, ModeId};
use crate::C64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A single ladder operator on an initial (time-zero) mode.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "mode", rename_all = "lowercase")]
pub enum Ladder {
    Annihilate(ModeId),
    Create(ModeId),
}

impl Ladder {
    pub fn realize(&self, space: &FockSpace) -> Result<MatrixOperator> {
        match self {
            Ladder::Annihilate(m) => annihilation_op(space, m),
            Ladder::Create(m) => create_op(space, m),
        }
    }

    pub fn dagger(&self) -> Ladder {
        match self {
            Ladder::Annihilate(m) => Ladder::Create(m.clone()),
            Ladder::Create(m) => Ladder::Annihilate(m.clone()),
        }
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ladder::Annihilate(m) => write!(f, "{}({})", m.species, m.site),
            Ladder::Create(m) => write!(f, "{}†({})", m.species, m.site),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticTerm {
    pub coefficient: C64,
    pub left: Ladder,
    pub right: Ladder,
}

/// `sum_k c_k * left_k * right_k` over time-zero ladder operators, kept in the
/// operator order given (no reordering, so no hidden anticommutation signs).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub terms: Vec<QuadraticTerm>,
}

impl QuadraticForm {
    /// Accumulates `coefficient * left * right`, merging with an existing
    /// identical operator pair.
    pub fn push(&mut self, coefficient: C64, left: Ladder, right: Ladder) {
        if let Some(t) = self
            .terms
            .iter_mut()
            .find(|t| t.left == left && t.right == right)
        {
            t.coefficient += coefficient;
        } else {
            self.terms.push(QuadraticTerm {
                coefficient,
                left,
                right,
            });
        }
    }

    /// Adds `scale * x * y` where `x` and `y` are linear combinations of ladders.
    pub fn push_product(&mut self, scale: C64, x: &[(C64, Ladder)], y: &[(C64, Ladder)]) {
        for (cx, lx) in x {
            for (cy, ly) in y {
                let c = scale * cx * cy;
                if c.norm() > 0.0 {
                    self.push(c, lx.clone(), ly.clone());
                }
            }
        }
    }

    /// Coefficient of `left * right` (zero when absent).
    pub fn coefficient(&self, left: &Ladder, right: &Ladder) -> C64 {
        self.terms
            .iter()
            .find(|t| &t.left == left && &t.right == right)
            .map(|t| t.coefficient)
            .unwrap_or_default()
    }

    /// Drops terms whose coefficient magnitude is at most `tol`.
    pub fn pruned(mut self, tol: f64) -> Self {
        self.terms.retain(|t| t.coefficient.norm() > tol);
        self
    }

    pub fn realize(&self, space: &FockSpace) -> Result<MatrixOperator> {
        let mut acc = MatrixOperator::zeros(space);
        for t in &self.terms {
            let prod = t.left.realize(space)?.mul(&t.right.realize(space)?)?;
            acc = acc.add(&prod.scale(t.coefficient))?;
        }
        Ok(acc)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "({:.6}{:+.6}i) {} {}",
                t.coefficient.re, t.coefficient.im, t.left, t.right
            )?;
        }
        Ok(())
    }
}

/// Linear expansion of `mode`'s annihilator at the frame's time over time-zero ladders.
pub fn annihilator_expansion(frame: &DescriptorFrame, mode: &ModeId) -> Result<Vec<(C64, Ladder)>> {
    let sector = frame
        .sector(mode.species)
        .ok_or_else(|| crate::Error::UnknownMode(mode.clone()))?;
    let row = frame.row(mode)?;
    Ok(row
        .into_iter()
        .zip(&sector.modes)
        .filter(|(c, _)| c.norm() > 0.0)
        .map(|(c, m)| (c, Ladder::Annihilate(m.clone())))
        .collect())
}

/// Expansion of the creator `mode†` at the frame's time.
pub fn creator_expansion(frame: &DescriptorFrame, mode: &ModeId) -> Result<Vec<(C64, Ladder)>> {
    Ok(annihilator_expansion(frame, mode)?
        .into_iter()
        .map(|(c, l)| (c.conj(), l.dagger()))
        .collect())
}
