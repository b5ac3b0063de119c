//! Discrete twisted convolution on the information lattice:
//! `(a *s b)[k, l] = sum a[k', l'] b[k - k', l - l'] exp(j 2 pi l' (k - k') / MN)`.

use num_complex::Complex64;

use super::grid::DDGrid;
use super::signal::DDSignal;
use crate::arith::RootTable;

/// One filter tap at an integer delay-Doppler offset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tap {
    pub k: i64,
    pub l: i64,
    pub value: Complex64,
}

/// A finite delay-Doppler filter. Taps are kept sorted by `(k, l)` with
/// duplicates merged, which fixes the accumulation order of every
/// convolution that uses them.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FilterTaps {
    taps: Vec<Tap>,
}

impl FilterTaps {
    pub fn new(mut taps: Vec<Tap>) -> Self {
        taps.sort_by_key(|a| (a.k, a.l));
        let mut merged: Vec<Tap> = Vec::with_capacity(taps.len());
        for t in taps {
            match merged.last_mut() {
                Some(last) if last.k == t.k && last.l == t.l => last.value += t.value,
                _ => merged.push(t),
            }
        }
        Self { taps: merged }
    }

    pub fn from_triples(triples: impl IntoIterator<Item = (i64, i64, Complex64)>) -> Self {
        Self::new(
            triples
                .into_iter()
                .map(|(k, l, value)| Tap { k, l, value })
                .collect(),
        )
    }

    pub fn identity() -> Self {
        Self::from_triples([(0, 0, Complex64::new(1.0, 0.0))])
    }

    pub fn taps(&self) -> &[Tap] {
        &self.taps
    }

    pub fn len(&self) -> usize {
        self.taps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taps.is_empty()
    }

    pub fn energy(&self) -> f64 {
        self.taps.iter().map(|t| t.value.norm_sqr()).sum()
    }

    /// Value at `(k, l)`, zero where there is no tap.
    pub fn get(&self, k: i64, l: i64) -> Complex64 {
        self.taps
            .binary_search_by(|t| (t.k, t.l).cmp(&(k, l)))
            .map(|i| self.taps[i].value)
            .unwrap_or_default()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self {
            taps: self
                .taps
                .iter()
                .map(|t| Tap {
                    value: t.value * s,
                    ..*t
                })
                .collect(),
        }
    }

    /// Drops taps whose magnitude is at most `threshold`.
    pub fn pruned(&self, threshold: f64) -> Self {
        Self {
            taps: self
                .taps
                .iter()
                .copied()
                .filter(|t| t.value.norm() > threshold)
                .collect(),
        }
    }

    /// `self - other` on the union of supports.
    pub fn difference(&self, other: &FilterTaps) -> FilterTaps {
        let mut all = self.taps.clone();
        all.extend(other.taps.iter().map(|t| Tap {
            value: -t.value,
            ..*t
        }));
        FilterTaps::new(all)
    }

    /// Twisted convolution of two filters, `self *s other`, as a filter.
    pub fn compose(&self, other: &FilterTaps, grid: &DDGrid) -> FilterTaps {
        let roots = RootTable::new(grid.mn());
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.taps {
            for b in &other.taps {
                // output (k, l) = (a.k + b.k, a.l + b.l); twist l'(k - k') = a.l * b.k
                out.push(Tap {
                    k: a.k + b.k,
                    l: a.l + b.l,
                    value: a.value * b.value * roots.get(a.l * b.k),
                });
            }
        }
        FilterTaps::new(out)
    }
}

/// `taps *s b`, with `b` read through its quasi-periodic extension. An empty
/// tap set yields the zero signal.
pub fn twisted_convolve(taps: &FilterTaps, b: &DDSignal) -> DDSignal {
    let grid = *b.grid();
    let (m, n) = (grid.m() as i64, grid.n() as i64);
    let mn_roots = RootTable::new(grid.mn());
    let n_roots = RootTable::new(grid.n());
    let src = b.values();
    let mut out = DDSignal::zeros(grid);
    let vals = out.values_mut();
    for t in taps.taps() {
        for k in 0..m {
            let sk = k - t.k;
            let wraps = sk.div_euclid(m);
            let k0 = sk.rem_euclid(m);
            let twist = t.value * mn_roots.get(t.l * sk);
            let row_out = (k * n) as usize;
            let row_in = (k0 * n) as usize;
            for l in 0..n {
                let l0 = (l - t.l).rem_euclid(n);
                let mut v = src[row_in + l0 as usize];
                if wraps != 0 {
                    v *= n_roots.get(wraps * l0);
                }
                vals[row_out + l as usize] += twist * v;
            }
        }
    }
    out
}

/// Reference evaluation of the defining sum at one output point. Used as an
/// independent check on [`twisted_convolve`].
pub fn twisted_convolve_at(taps: &FilterTaps, b: &DDSignal, k: i64, l: i64) -> Complex64 {
    let roots = RootTable::new(b.grid().mn());
    taps.taps()
        .iter()
        .map(|t| t.value * b.at(k - t.k, l - t.l) * roots.get(t.l * (k - t.k)))
        .sum()
}
