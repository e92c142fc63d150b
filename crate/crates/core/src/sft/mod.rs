//! Subshifts of finite type.

pub mod charpoly;
mod graph;
mod matrix;
mod spectral;

pub use graph::{is_irreducible, strongly_connected_components};
pub use matrix::TransitionMatrix;
pub use spectral::{
    spectral_radius, spectral_radius_capped, SpectralResult, DEFAULT_TOL, MAX_ITERATIONS,
    ORACLE_MAX_ORDER,
};

use crate::error::Result;

#[derive(Debug, Clone)]
pub struct Component {
    /// Zero-based symbols of the component, ascending.
    pub symbols: Vec<usize>,
    pub matrix: TransitionMatrix,
    pub entropy: f64,
}

/// Recurrent strongly connected components and their entropies.
#[derive(Debug, Clone)]
pub struct ComponentDecomposition {
    pub components: Vec<Component>,
    pub max_entropy: f64,
    /// Index into `components` of a piece attaining `max_entropy`.
    pub responsible_index: Option<usize>,
}

impl ComponentDecomposition {
    pub fn component_entropies(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.entropy).collect()
    }
}

/// Splits `a` into its irreducible pieces (components with at least one
/// edge). Wandering symbols are dropped. Components are ordered by their
/// smallest symbol.
pub fn decompose(a: &TransitionMatrix, tol: f64) -> Result<ComponentDecomposition> {
    let mut comps: Vec<Vec<usize>> = strongly_connected_components(a)
        .into_iter()
        .filter(|c| graph::has_internal_edge(a, c))
        .collect();
    comps.sort_by_key(|c| c[0]);

    let mut components = Vec::with_capacity(comps.len());
    for symbols in comps {
        let matrix = a.induced(&symbols)?;
        let (radius, _, _) = spectral::irreducible_radius(&matrix, tol, MAX_ITERATIONS)?;
        components.push(Component {
            symbols,
            matrix,
            entropy: radius.ln(),
        });
    }
    let mut responsible_index = None;
    let mut max_entropy = 0.0;
    for (k, c) in components.iter().enumerate() {
        if responsible_index.is_none() || c.entropy > max_entropy {
            max_entropy = c.entropy;
            responsible_index = Some(k);
        }
    }
    Ok(ComponentDecomposition {
        components,
        max_entropy,
        responsible_index,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_diagonal_pieces() {
        let m = TransitionMatrix::from_rows(&[[1u8, 1, 0], [1, 1, 0], [0, 0, 1]]).unwrap();
        let d = decompose(&m, DEFAULT_TOL).unwrap();
        assert_eq!(d.components.len(), 2);
        let e = d.component_entropies();
        assert!((e[0] - 2f64.ln()).abs() < 1e-12);
        assert!(e[1].abs() < 1e-12);
        assert_eq!(d.responsible_index, Some(0));
        assert!((d.max_entropy - 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn wandering_only() {
        let m = TransitionMatrix::from_rows(&[[0u8, 1], [0, 0]]).unwrap();
        let d = decompose(&m, DEFAULT_TOL).unwrap();
        assert!(d.components.is_empty());
        assert_eq!(d.max_entropy, 0.0);
        assert_eq!(d.responsible_index, None);
    }
}
