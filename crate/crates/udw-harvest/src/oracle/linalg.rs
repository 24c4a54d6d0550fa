//! Dense complex-matrix helpers for the exact simulators: Hermitian
//! eigenvalues by cyclic Jacobi rotations, partial traces of tripartite
//! pure states, trace norms and entropies.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

/// Eigenvalues of a Hermitian matrix by two-sided complex Jacobi sweeps.
pub fn hermitian_eigenvalues(a: &CMat) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.clone();
    let scale: f64 = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1e-300);
    for _ in 0..100 {
        let mut off = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let b = apq.norm();
                if b <= 1e-18 * scale {
                    continue;
                }
                let phase = apq / b;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let tau = (aqq - app) / (2.0 * b);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // Unitary J: J[p][p]=c, J[q][q]=c, J[p][q]=s·e^{iφ},
                // J[q][p]=-s·e^{-iφ}; update M <- J† M J.
                let s_pos = phase * s;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * c - mkq * s_pos.conj();
                    m[(k, q)] = mkp * s_pos + mkq * c;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = mpk * c - mqk * s_pos;
                    m[(q, k)] = mpk * s_pos.conj() + mqk * c;
                }
                // Clean the pivot to keep hermiticity exact.
                let sym = 0.5 * (m[(p, q)] + m[(q, p)].conj());
                m[(p, q)] = sym;
                m[(q, p)] = sym.conj();
            }
        }
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}

/// Trace norm ‖A‖₁ of a Hermitian matrix.
pub fn trace_norm(a: &CMat) -> f64 {
    hermitian_eigenvalues(a).iter().map(|l| l.abs()).sum()
}

/// Von Neumann entropy from a density matrix (natural log).
pub fn von_neumann_entropy(rho: &CMat) -> f64 {
    hermitian_eigenvalues(rho)
        .iter()
        .filter(|&&l| l > 1e-14)
        .map(|&l| -l * l.ln())
        .sum()
}

/// Reduced state of subsystem B from a pure A⊗B⊗C state.
pub fn reduce_to_b(psi: &CVec, dims: (usize, usize, usize)) -> CMat {
    let (da, db, dc) = dims;
    let mut rho = CMat::zeros(db, db);
    for a in 0..da {
        for c in 0..dc {
            for b1 in 0..db {
                for b2 in 0..db {
                    let i1 = (a * db + b1) * dc + c;
                    let i2 = (a * db + b2) * dc + c;
                    rho[(b1, b2)] += psi[i1] * psi[i2].conj();
                }
            }
        }
    }
    rho
}

/// Reduced state of the detector pair A⊗B from a pure A⊗B⊗C state.
pub fn reduce_to_ab(psi: &CVec, dims: (usize, usize, usize)) -> CMat {
    let (da, db, dc) = dims;
    let d = da * db;
    let mut rho = CMat::zeros(d, d);
    for c in 0..dc {
        for i in 0..d {
            for j in 0..d {
                let (a1, b1) = (i / db, i % db);
                let (a2, b2) = (j / db, j % db);
                let i1 = (a1 * db + b1) * dc + c;
                let i2 = (a2 * db + b2) * dc + c;
                rho[(i, j)] += psi[i1] * psi[i2].conj();
            }
        }
    }
    rho
}

/// Mutual information I(A:B) of the detector pair in a pure tripartite
/// state.
pub fn mutual_information_ab(psi: &CVec, dims: (usize, usize, usize)) -> f64 {
    let rho_ab = reduce_to_ab(psi, dims);
    let (da, db) = (dims.0, dims.1);
    let mut rho_a = CMat::zeros(da, da);
    let mut rho_b = CMat::zeros(db, db);
    for a1 in 0..da {
        for a2 in 0..da {
            for b in 0..db {
                rho_a[(a1, a2)] += rho_ab[(a1 * db + b, a2 * db + b)];
            }
        }
    }
    for b1 in 0..db {
        for b2 in 0..db {
            for a in 0..da {
                rho_b[(b1, b2)] += rho_ab[(a * db + b1, a * db + b2)];
            }
        }
    }
    von_neumann_entropy(&rho_a) + von_neumann_entropy(&rho_b) - von_neumann_entropy(&rho_ab)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMat {
        let mut m = CMat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
            for j in (i + 1)..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn eigenvalues_match_trace_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2usize, 4, 7] {
            let m = random_hermitian(n, &mut rng);
            let eigs = hermitian_eigenvalues(&m);
            let tr: f64 = (0..n).map(|i| m[(i, i)].re).sum();
            let tr2: f64 = (&m * &m).diagonal().iter().map(|z| z.re).sum();
            let s1: f64 = eigs.iter().sum();
            let s2: f64 = eigs.iter().map(|l| l * l).sum();
            assert!((s1 - tr).abs() < 1e-12, "n={n}");
            assert!((s2 - tr2).abs() < 1e-11, "n={n}");
        }
    }

    #[test]
    fn eigenvalues_of_known_two_level_matrix() {
        // [[1, i],[-i, 1]] has eigenvalues 0 and 2.
        let mut m = CMat::zeros(2, 2);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(1, 1)] = Complex64::new(1.0, 0.0);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        m[(1, 0)] = Complex64::new(0.0, -1.0);
        let eigs = hermitian_eigenvalues(&m);
        assert!((eigs[0] - 0.0).abs() < 1e-14);
        assert!((eigs[1] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn bell_state_has_two_bits_style_mutual_information() {
        // (|00⟩ + |11⟩)/√2 ⊗ |0⟩_C: I(A:B) = 2 ln 2.
        let dims = (2usize, 2usize, 3usize);
        let mut psi = CVec::zeros(2 * 2 * 3);
        let amp = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        psi[(0 * 2 + 0) * 3] = amp;
        psi[(1 * 2 + 1) * 3] = amp;
        let mi = mutual_information_ab(&psi, dims);
        assert!((mi - 2.0 * (2.0f64).ln()).abs() < 1e-12);
        let rho_b = reduce_to_b(&psi, dims);
        assert!((rho_b[(0, 0)].re - 0.5).abs() < 1e-14);
        assert!((rho_b[(1, 1)].re - 0.5).abs() < 1e-14);
    }
}
