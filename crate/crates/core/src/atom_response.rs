//! Atomic response functions for a two-level system of splitting `gap`,
//! plus a brute-force Heisenberg-picture oracle that rederives them from a
//! 2x2 matrix exponential.
//!
//! Conventions: Hamiltonian (gap/2) sigma_3, coupling operator sigma_2,
//! ground state the sigma_3 = -1 eigenvector. The response functions are
//! then exactly
//!   chi(u)  = <g| [sigma_2(u), sigma_2(0)] |g> / 2 = -i sin(gap u)
//!   C(u)    = <g| {sigma_2(u), sigma_2(0)} |g> / 2 =    cos(gap u)

use num_complex::Complex64;

/// Linear response (commutator) function of the bare atom.
pub fn atomic_susceptibility(gap: f64, u: f64) -> Complex64 {
    Complex64::new(0.0, -(gap * u).sin())
}

/// Symmetric (anticommutator) correlation function of the bare atom.
pub fn atomic_symmetric_correlation(gap: f64, u: f64) -> f64 {
    (gap * u).cos()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomState {
    Ground,
    Excited,
}

// Dense complex 2x2 matrix, row major. Only what the oracle needs.
#[derive(Debug, Clone, Copy)]
struct M2([Complex64; 4]);

impl M2 {
    fn zero() -> Self {
        M2([Complex64::new(0.0, 0.0); 4])
    }

    fn identity() -> Self {
        let mut m = M2::zero();
        m.0[0] = Complex64::new(1.0, 0.0);
        m.0[3] = Complex64::new(1.0, 0.0);
        m
    }

    fn mul(&self, other: &M2) -> M2 {
        let a = &self.0;
        let b = &other.0;
        M2([
            a[0] * b[0] + a[1] * b[2],
            a[0] * b[1] + a[1] * b[3],
            a[2] * b[0] + a[3] * b[2],
            a[2] * b[1] + a[3] * b[3],
        ])
    }

    fn add(&self, other: &M2) -> M2 {
        M2([
            self.0[0] + other.0[0],
            self.0[1] + other.0[1],
            self.0[2] + other.0[2],
            self.0[3] + other.0[3],
        ])
    }

    fn scale(&self, s: Complex64) -> M2 {
        M2([self.0[0] * s, self.0[1] * s, self.0[2] * s, self.0[3] * s])
    }

    fn adjoint(&self) -> M2 {
        M2([
            self.0[0].conj(),
            self.0[2].conj(),
            self.0[1].conj(),
            self.0[3].conj(),
        ])
    }

    fn norm1(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).sum()
    }

    // Scaling and squaring with a plain Taylor series; plenty for 2x2
    // anti-Hermitian arguments of modest norm.
    fn expm(&self) -> M2 {
        let mut s = 0u32;
        let mut nrm = self.norm1();
        while nrm > 0.5 {
            nrm *= 0.5;
            s += 1;
        }
        let a = self.scale(Complex64::new(f64::powi(0.5, s as i32), 0.0));
        let mut term = M2::identity();
        let mut sum = M2::identity();
        for k in 1..25 {
            term = term.mul(&a).scale(Complex64::new(1.0 / k as f64, 0.0));
            sum = sum.add(&term);
            if term.norm1() < 1e-18 {
                break;
            }
        }
        let mut r = sum;
        for _ in 0..s {
            r = r.mul(&r);
        }
        r
    }
}

/// Recomputes (chi(u), C(u)) from first principles: evolves sigma_2 in the
/// Heisenberg picture with U = exp(-i H u) and takes commutator and
/// anticommutator expectation values in the chosen eigenstate. Slow and
/// convention-free; exists to pin the closed forms above.
pub fn heisenberg_oracle(gap: f64, u: f64, state: AtomState) -> (Complex64, f64) {
    let i = Complex64::new(0.0, 1.0);
    let sigma2 = M2([
        Complex64::new(0.0, 0.0),
        -i,
        i,
        Complex64::new(0.0, 0.0),
    ]);
    let h = M2([
        Complex64::new(0.5 * gap, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(-0.5 * gap, 0.0),
    ]);
    let ev = h.scale(-i * Complex64::new(u, 0.0)).expm();
    let s2t = ev.adjoint().mul(&sigma2).mul(&ev);

    let comm = s2t.mul(&sigma2).add(&sigma2.mul(&s2t).scale(Complex64::new(-1.0, 0.0)));
    let anti = s2t.mul(&sigma2).add(&sigma2.mul(&s2t));

    // diagonal expectation value in the sigma_3 eigenbasis
    let idx = match state {
        AtomState::Excited => 0,
        AtomState::Ground => 3,
    };
    let chi = comm.0[idx] * Complex64::new(0.5, 0.0);
    let sym = (anti.0[idx] * Complex64::new(0.5, 0.0)).re;
    (chi, sym)
}
