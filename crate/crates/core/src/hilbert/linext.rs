use super::{vecops, StateVector, C64};
use crate::{Error, Result};

/// A linear map given by its action on an orthonormal set of domain vectors,
/// extended by linearity to their span.
///
/// When the images are orthonormal too the map is an isometry on the span.
/// Vectors are raw amplitudes: the engine never renormalizes, so the norm of
/// an output is itself an observable.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearExtensionMap {
    in_dim: usize,
    out_dim: usize,
    domain: Vec<Vec<C64>>,
    images: Vec<Vec<C64>>,
}

impl LinearExtensionMap {
    /// `tol` bounds the entrywise deviation of both Gram matrices from the identity.
    pub fn new(
        in_dim: usize,
        out_dim: usize,
        domain: Vec<Vec<C64>>,
        images: Vec<Vec<C64>>,
        tol: f64,
    ) -> Result<Self> {
        if domain.len() != images.len() {
            return Err(Error::Dimension(format!(
                "{} domain vectors but {} images",
                domain.len(),
                images.len()
            )));
        }
        if let Some(v) = domain.iter().find(|v| v.len() != in_dim) {
            return Err(Error::Dimension(format!(
                "domain vector of length {} in a space of dimension {in_dim}",
                v.len()
            )));
        }
        if let Some(v) = images.iter().find(|v| v.len() != out_dim) {
            return Err(Error::Dimension(format!(
                "image vector of length {} in a space of dimension {out_dim}",
                v.len()
            )));
        }
        let dev = vecops::orthonormality_deviation(&domain);
        if dev > tol {
            return Err(Error::Argument(format!(
                "domain vectors are not orthonormal (deviation {dev:e})"
            )));
        }
        let dev = vecops::orthonormality_deviation(&images);
        if dev > tol {
            return Err(Error::Isometry(dev));
        }
        Ok(Self {
            in_dim,
            out_dim,
            domain,
            images,
        })
    }

    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn rank(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[Vec<C64>] {
        &self.domain
    }

    pub fn images(&self) -> &[Vec<C64>] {
        &self.images
    }

    /// `Σ_j ⟨d_j|x⟩ |img_j⟩`; components of `x` outside the domain span are dropped.
    pub fn apply(&self, x: &[C64]) -> Result<Vec<C64>> {
        if x.len() != self.in_dim {
            return Err(Error::Dimension(format!(
                "input of length {} for a map on dimension {}",
                x.len(),
                self.in_dim
            )));
        }
        let mut out = vec![C64::new(0.0, 0.0); self.out_dim];
        for (d, img) in self.domain.iter().zip(&self.images) {
            let c = vecops::vdot(d, x);
            if c != C64::new(0.0, 0.0) {
                vecops::axpy(c, img, &mut out);
            }
        }
        Ok(out)
    }

    pub fn apply_state(&self, x: &StateVector) -> Result<Vec<C64>> {
        self.apply(x.amplitudes())
    }

    /// Adjoint map `Σ_j ⟨img_j|y⟩ |d_j⟩`, the inverse on the image span.
    pub fn inverse(&self, y: &[C64]) -> Result<Vec<C64>> {
        if y.len() != self.out_dim {
            return Err(Error::Dimension(format!(
                "input of length {} for an inverse onto dimension {}",
                y.len(),
                self.out_dim
            )));
        }
        let mut out = vec![C64::new(0.0, 0.0); self.in_dim];
        for (d, img) in self.domain.iter().zip(&self.images) {
            let c = vecops::vdot(img, y);
            if c != C64::new(0.0, 0.0) {
                vecops::axpy(c, d, &mut out);
            }
        }
        Ok(out)
    }

    /// Squared norm of the projection of `x` onto the domain span.
    pub fn domain_weight(&self, x: &[C64]) -> f64 {
        self.domain.iter().map(|d| vecops::vdot(d, x).norm_sqr()).sum()
    }
}
