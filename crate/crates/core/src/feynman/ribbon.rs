use super::pairing::Pairing;
use crate::error::{Error, Result};

/// A pairing together with a cyclic order of the three half-edges at each
/// vertex, i.e. a fat graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonGraph {
    pairing: Pairing,
    rotation: Vec<usize>,
}

/// Topology of the surface obtained by fattening a connected ribbon graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RibbonInvariants {
    /// Boundary components.
    pub faces: usize,
    pub genus: usize,
    /// Independent cycles `e - v + 1`.
    pub loops: usize,
}

impl RibbonGraph {
    /// `rotation[h]` is the half-edge following `h` at its vertex. Every
    /// cycle of `rotation` must be one vertex triple.
    pub fn new(pairing: Pairing, rotation: Vec<usize>) -> Result<Self> {
        let bad = |msg: String| Error::InvalidArgument(format!("ribbon rotation: {msg}"));
        if rotation.len() != pairing.half_edges() {
            return Err(bad(format!(
                "{} entries for {} half-edges",
                rotation.len(),
                pairing.half_edges()
            )));
        }
        for (h, &next) in rotation.iter().enumerate() {
            if next >= rotation.len() || next / 3 != h / 3 || next == h {
                return Err(bad(format!("half-edge {h} maps to {next}")));
            }
            if rotation.get(next).and_then(|&x| rotation.get(x)) != Some(&h) {
                return Err(bad(format!("half-edge {h} is not on a 3-cycle")));
            }
        }
        Ok(RibbonGraph { pairing, rotation })
    }

    /// Rotation `3v -> 3v+1 -> 3v+2` at every vertex. This is the cyclic
    /// order of the matrix indices in `tr M^3`.
    pub fn standard(pairing: Pairing) -> Self {
        let reversed = vec![false; pairing.vertices()];
        Self::with_orientations(pairing, &reversed)
    }

    /// Standard rotation, reversed at the vertices flagged `true`.
    pub fn with_orientations(pairing: Pairing, reversed: &[bool]) -> Self {
        let rotation = (0..pairing.half_edges())
            .map(|h| {
                let (v, k) = (h / 3, h % 3);
                let step = if reversed.get(v).copied().unwrap_or(false) { 2 } else { 1 };
                3 * v + (k + step) % 3
            })
            .collect();
        RibbonGraph { pairing, rotation }
    }

    pub fn pairing(&self) -> &Pairing {
        &self.pairing
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    /// Number of cycles of the face-tracing permutation `rotation ∘ pairing`.
    /// Works for disconnected graphs too (faces add up over components).
    pub fn face_count(&self) -> usize {
        let n = self.rotation.len();
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                h = self.rotation[self.pairing.partner(h)];
            }
        }
        cycles
    }
}

/// Faces, genus and loop number of a connected ribbon graph, from
/// `2 - 2g - h = 1 - r`.
pub fn ribbon_faces(g: &RibbonGraph) -> Result<RibbonInvariants> {
    let p = g.pairing();
    if p.vertices() == 0 || !p.is_connected() {
        return Err(Error::InvalidArgument(format!(
            "ribbon graph has {} components; split it first",
            p.component_count()
        )));
    }
    let faces = g.face_count();
    let loops = p.loops();
    let twice_genus = 1 + loops - faces;
    debug_assert!(twice_genus.is_multiple_of(2), "Euler characteristic parity");
    Ok(RibbonInvariants {
        faces,
        genus: twice_genus / 2,
        loops,
    })
}
