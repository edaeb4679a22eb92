use super::frame::{advance, DescriptorFrame};
use super::gate::GateSpec;
use crate::error::Result;
use crate::fock::FockSpace;

/// Chronologically ordered gates on a fixed space.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    space: FockSpace,
    gates: Vec<GateSpec>,
}

impl Circuit {
    pub fn new(space: &FockSpace, gates: Vec<GateSpec>) -> Result<Self> {
        for g in &gates {
            g.validate(space)?;
        }
        Ok(Self {
            space: space.clone(),
            gates,
        })
    }

    pub fn push(&mut self, gate: GateSpec) -> Result<()> {
        gate.validate(&self.space)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    pub fn gates(&self) -> &[GateSpec] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

/// Frames `t = 0 ..= n`, folding [`advance`] over the gates.
pub fn run_frame(circuit: &Circuit) -> Result<Vec<DescriptorFrame>> {
    let mut frames = vec![DescriptorFrame::identity(circuit.space())];
    for gate in circuit.gates() {
        let next = advance(frames.last().expect("nonempty"), gate)?;
        frames.push(next);
    }
    Ok(frames)
}
