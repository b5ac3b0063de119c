//! Point, chirp-spread and Zadoff-Chu-spread pilots.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mod_inv, RootTable};
use crate::dd::{zak_from_samples, DDGrid, DDSignal};
use crate::error::{Error, Result};

/// A single DD pulse (pulsone) at `(k_p, l_p)` carrying energy `E_p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointPilot {
    pub grid: DDGrid,
    pub k_p: usize,
    pub l_p: usize,
    pub energy: f64,
}

impl PointPilot {
    pub fn new(grid: DDGrid, k_p: usize, l_p: usize, energy: f64) -> Result<Self> {
        if k_p >= grid.m() || l_p >= grid.n() {
            return Err(Error::InvalidParameter(format!(
                "pilot location ({k_p}, {l_p}) outside the {}x{} fundamental region",
                grid.m(),
                grid.n()
            )));
        }
        if !(energy >= 0.0 && energy.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "pilot energy must be nonnegative, got {energy}"
            )));
        }
        Ok(Self {
            grid,
            k_p,
            l_p,
            energy,
        })
    }

    /// Single entry `sqrt(E_p)` at the pilot location.
    pub fn signal(&self) -> DDSignal {
        let mut x = DDSignal::zeros(self.grid);
        x.set(self.k_p, self.l_p, Complex64::new(self.energy.sqrt(), 0.0));
        x
    }

    pub fn unit_signal(&self) -> DDSignal {
        let mut x = DDSignal::zeros(self.grid);
        x.set(self.k_p, self.l_p, Complex64::new(1.0, 0.0));
        x
    }
}

/// Zak-OTFS spread pilot: the point pilot at the origin passed through the
/// chirp spreading filter `w_q[k, l] = xi_MN^{q k^2 + q l^2}`.
///
/// `q = aM + bN (mod MN)` with `a = q M^{-1} mod N`, `b = q N^{-1} mod M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChirpPilot {
    pub grid: DDGrid,
    pub q: i64,
    pub a: i64,
    pub b: i64,
}

impl ChirpPilot {
    pub fn new(grid: DDGrid, q: i64) -> Result<Self> {
        grid.require_odd_coprime()?;
        let (m, n) = (grid.m() as i64, grid.n() as i64);
        if gcd(q, m) != 1 || gcd(q, n) != 1 {
            return Err(Error::Construction(format!(
                "chirp slope q={q} must be coprime to M={m} and N={n}"
            )));
        }
        let a = (q.rem_euclid(n) * mod_inv(m, n).expect("M, N coprime")).rem_euclid(n);
        let b = (q.rem_euclid(m) * mod_inv(n, m).expect("M, N coprime")).rem_euclid(m);
        Ok(Self { grid, q, a, b })
    }

    /// Unit-energy DD representation.
    ///
    /// Closed form, up to a global phase:
    /// `MN^{-1/2} xi_N^{a l^2 - l^2 / (4 a M^2) + k l / M} xi_M^{b k^2}`
    /// with divisions taken as inverses mod `N`. When `a = 0` (only possible
    /// for `N = 1`) the direct construction is used instead.
    pub fn signal(&self) -> DDSignal {
        if self.a == 0 {
            return self.direct_signal();
        }
        let (m, n) = (self.grid.m() as i64, self.grid.n() as i64);
        let rn = RootTable::new(n as usize);
        let rm = RootTable::new(m as usize);
        let inv_4am2 =
            mod_inv((4 * self.a % n * m % n * m).rem_euclid(n), n).expect("4aM^2 is a unit mod N");
        let inv_m = mod_inv(m, n).expect("M, N coprime");
        let scale = 1.0 / ((m * n) as f64).sqrt();
        DDSignal::from_fn(self.grid, |k, l| {
            let (k, l) = (k as i64, l as i64);
            let l2 = l * l % n;
            let e_n = self.a * l2 - l2 * inv_4am2 % n + k * l % n * inv_m % n;
            rn.get(e_n) * rm.get(self.b * (k * k % m)) * scale
        })
    }

    /// Direct construction `w_q *s delta`, evaluated by summing the spreading
    /// filter over one period of pilot translates, then normalized.
    pub fn direct_signal(&self) -> DDSignal {
        let (m, n) = (self.grid.m() as i64, self.grid.n() as i64);
        let mn = m * n;
        let rmn = RootTable::new(mn as usize);
        let rn = RootTable::new(n as usize);
        let q = self.q.rem_euclid(mn);
        let x = DDSignal::from_fn(self.grid, |k, l| {
            let (k, l) = (k as i64, l as i64);
            let mut acc = Complex64::new(0.0, 0.0);
            for p in 0..n {
                let dk = (k - p * m).rem_euclid(mn);
                let ek = q * (dk * dk % mn) % mn;
                let tone = rn.get(p * l);
                for r in 0..m {
                    let dl = (l - r * n).rem_euclid(mn);
                    acc += rmn.get(ek + q * (dl * dl % mn)) * tone;
                }
            }
            acc
        });
        let e = x.energy();
        if e > 0.0 {
            x.scaled(Complex64::new(1.0 / e.sqrt(), 0.0))
        } else {
            x
        }
    }
}

/// Zadoff-Chu sequence `X_u[n] = xi_L^{-u n (n + 1) / 2}` of length `L`,
/// without any precondition on `u`.
pub fn zc_sequence(len: usize, u: i64) -> Vec<Complex64> {
    let l = len as i64;
    let roots = RootTable::new(len);
    (0..l)
        .map(|i| {
            let t = (i * (i + 1) / 2) % l;
            roots.get(-(u.rem_euclid(l) * t % l))
        })
        .collect()
}

/// Unit-energy DD representation of a ZC sequence, via the Zak transform of
/// `X_u / sqrt(MN)`. Works for any root; no coprimality checks are made.
pub fn zc_dd_from_sequence(grid: &DDGrid, u: i64) -> DDSignal {
    let scale = 1.0 / (grid.mn() as f64).sqrt();
    let seq: Vec<Complex64> = zc_sequence(grid.mn(), u)
        .into_iter()
        .map(|v| v * scale)
        .collect();
    zak_from_samples(&seq, grid).expect("length is MN")
}

/// Zadoff-Chu spread pilot of composite length `MN`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZcPilot {
    pub grid: DDGrid,
    pub u: i64,
}

impl ZcPilot {
    pub fn new(grid: DDGrid, u: i64) -> Result<Self> {
        grid.require_odd_coprime()?;
        if gcd(u, grid.mn() as i64) != 1 {
            return Err(Error::Construction(format!(
                "ZC root u={u} is not coprime to MN={}",
                grid.mn()
            )));
        }
        Ok(Self { grid, u })
    }

    /// Unit-modulus time sequence `X_u[n]`, `n = 0..MN`.
    pub fn sequence(&self) -> Vec<Complex64> {
        zc_sequence(self.grid.mn(), self.u)
    }

    /// Closed-form unit-energy DD representation:
    /// `MN^{-1/2} xi_MN^{-u k (k+1) / 2} xi_N^{(u(2k+1) + 2l)^2 / (8uM)}`,
    /// where `1/(8uM)` is the inverse mod `N`.
    pub fn signal(&self) -> DDSignal {
        let (m, n) = (self.grid.m() as i64, self.grid.n() as i64);
        let mn = m * n;
        let u = self.u;
        let rmn = RootTable::new(mn as usize);
        let rn = RootTable::new(n as usize);
        let inv = mod_inv((8 * u.rem_euclid(n) % n * m % n).rem_euclid(n), n)
            .expect("8uM is a unit mod N");
        let scale = 1.0 / (mn as f64).sqrt();
        DDSignal::from_fn(self.grid, |k, l| {
            let (k, l) = (k as i64, l as i64);
            let e1 = -(u.rem_euclid(mn) * ((k * (k + 1) / 2) % mn) % mn);
            let s = (u * (2 * k + 1) + 2 * l).rem_euclid(n);
            let e2 = s * s % n * inv % n;
            rmn.get(e1) * rn.get(e2) * scale
        })
    }

    /// The DD representation computed through the Zak transform.
    pub fn signal_from_sequence(&self) -> DDSignal {
        zc_dd_from_sequence(&self.grid, self.u)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PilotKind {
    Point,
    Chirp,
    Zc,
}

/// Any of the three pilot waveforms, used where the receiver is generic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pilot {
    Point(PointPilot),
    Chirp(ChirpPilot),
    Zc(ZcPilot),
}

impl Pilot {
    pub fn kind(&self) -> PilotKind {
        match self {
            Pilot::Point(_) => PilotKind::Point,
            Pilot::Chirp(_) => PilotKind::Chirp,
            Pilot::Zc(_) => PilotKind::Zc,
        }
    }

    pub fn grid(&self) -> &DDGrid {
        match self {
            Pilot::Point(p) => &p.grid,
            Pilot::Chirp(p) => &p.grid,
            Pilot::Zc(p) => &p.grid,
        }
    }

    /// Unit-energy DD signal of the pilot.
    pub fn unit_signal(&self) -> DDSignal {
        match self {
            Pilot::Point(p) => p.unit_signal(),
            Pilot::Chirp(p) => p.signal(),
            Pilot::Zc(p) => p.signal(),
        }
    }
}
