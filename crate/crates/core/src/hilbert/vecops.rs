//! Arithmetic on raw (not necessarily normalized) amplitude vectors.

use super::C64;

/// `⟨a|b⟩`, conjugate-linear in `a`.
pub fn vdot(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm_sqr(a: &[C64]) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm(a: &[C64]) -> f64 {
    norm_sqr(a).sqrt()
}

/// Kronecker product, `a` index most significant.
pub fn kron(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        out.extend(b.iter().map(|y| x * y));
    }
    out
}

/// `y += alpha * x`
pub fn axpy(alpha: C64, x: &[C64], y: &mut [C64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub fn scale(alpha: C64, x: &[C64]) -> Vec<C64> {
    x.iter().map(|z| alpha * z).collect()
}

/// Euclidean distance `‖a − b‖`.
pub fn distance(a: &[C64], b: &[C64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// Standard basis vector `e_k` of length `dim`.
pub fn basis(dim: usize, k: usize) -> Vec<C64> {
    let mut v = vec![C64::new(0.0, 0.0); dim];
    v[k] = C64::new(1.0, 0.0);
    v
}

/// Largest entrywise deviation of the Gram matrix of `vectors` from the identity.
pub fn orthonormality_deviation(vectors: &[Vec<C64>]) -> f64 {
    let mut worst = 0.0f64;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((vdot(a, b) - target).norm());
        }
    }
    worst
}

/// Removes the components of `v` along each of the orthonormal `basis`
/// vectors (modified Gram-Schmidt, two passes) and returns the residual.
pub fn orthogonalize(v: &[C64], basis: &[Vec<C64>]) -> Vec<C64> {
    let mut r = v.to_vec();
    for _ in 0..2 {
        for q in basis {
            let c = vdot(q, &r);
            axpy(-c, q, &mut r);
        }
    }
    r
}
