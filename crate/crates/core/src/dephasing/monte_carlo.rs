//! Sampling oracle for dephasing: explicit random phase kicks.
//!
//! Each sample draws the accumulated phase `φ ~ N(0, convention·γt)` (one for
//! global noise, one per qubit for local noise), applies
//! `exp[−i Σ φ_q σ_z,q / 2]` to the state and records the pure-state
//! expectation of every observable.
//!
//! Samples are grouped in fixed blocks of `BLOCK` samples. Block `i` draws from
//! its own ChaCha stream `(seed, i)`, is reduced with Welford's update, and
//! blocks are merged in index order, so the result does not depend on how
//! many threads ran the blocks.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::Serialize;

use super::{LogicalFrame, NoiseKind, NoiseModel, ObservableRecord};
use crate::error::NoiseError;
use crate::state::PureState;

pub const BLOCK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MonteCarloRecord {
    pub mean: ObservableRecord,
    /// Standard error of each mean, in `ObservableRecord::NAMES` order.
    pub se: [f64; 6],
    pub samples: u64,
}

/// Running mean and centred sum of squares.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    #[inline]
    fn push(&mut self, x: f64, inv_count: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta * inv_count;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if self.count == 0 {
            return other;
        }
        if other.count == 0 {
            return self;
        }
        let count = self.count + other.count;
        let delta = other.mean - self.mean;
        let w = other.count as f64 / count as f64;
        Self { count, mean: self.mean + delta * w, m2: self.m2 + other.m2 + delta * delta * self.count as f64 * w }
    }

    fn standard_error(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.m2 / (self.count - 1) as f64 / self.count as f64).sqrt()
        }
    }
}

/// Observables restricted to the joint support of a batch of states, as
/// pair weights `V_ij = W_ij + conj(W_ji)` with `W_ab = ψ̄_a O_ab ψ_b`.
struct PairTable {
    support: Vec<u64>,
    pairs: Vec<(usize, usize)>,
    states: usize,
    /// `[state][observable]`
    diag: Vec<[f64; 6]>,
    /// `[state][observable][pair]`
    v_re: Vec<f64>,
    v_im: Vec<f64>,
}

impl PairTable {
    fn new(frame: &LogicalFrame, states: &[PureState]) -> Self {
        let mut support: Vec<u64> = states
            .iter()
            .flat_map(|s| s.amplitudes().iter().enumerate().filter(|(_, a)| a.norm_sqr() > 0.0).map(|(b, _)| b as u64))
            .collect();
        support.sort_unstable();
        support.dedup();
        let s = support.len();
        let pos = |b: u64| support.binary_search(&b).ok();

        // Operator matrices on the support.
        let mut ops = vec![vec![Complex64::default(); s * s]; 6];
        for (k, terms) in frame.observables.iter().enumerate() {
            for (c, op) in terms {
                for (j, &b) in support.iter().enumerate() {
                    let (a, f) = op.act_on_basis(b);
                    if let Some(i) = pos(a) {
                        ops[k][i * s + j] += *c * f;
                    }
                }
            }
        }

        let pairs: Vec<(usize, usize)> = (0..s).flat_map(|i| (i + 1..s).map(move |j| (i, j))).collect();
        let np = pairs.len();
        let mut diag = Vec::with_capacity(states.len());
        let mut v_re = vec![0.0; states.len() * 6 * np];
        let mut v_im = vec![0.0; states.len() * 6 * np];
        for (si, st) in states.iter().enumerate() {
            let psi: Vec<Complex64> = support.iter().map(|&b| st.amplitudes()[b as usize]).collect();
            let w = |k: usize, i: usize, j: usize| psi[i].conj() * ops[k][i * s + j] * psi[j];
            let mut d = [0.0; 6];
            for (k, dk) in d.iter_mut().enumerate() {
                *dk = (0..s).map(|i| w(k, i, i).re).sum();
                for (p, &(i, j)) in pairs.iter().enumerate() {
                    let v = w(k, i, j) + w(k, j, i).conj();
                    let idx = (si * 6 + k) * np + p;
                    v_re[idx] = v.re;
                    v_im[idx] = v.im;
                }
            }
            diag.push(d);
        }
        Self { support, pairs, states: states.len(), diag, v_re, v_im }
    }
}

/// Phase angles `θ_a` with `ψ_a → e^{−iθ_a} ψ_a`, for one noise draw.
fn draw_angles(
    kind: NoiseKind,
    n: usize,
    sigma: f64,
    support: &[u64],
    rng: &mut ChaCha8Rng,
    kicks: &mut [f64],
    out: &mut [f64],
) {
    match kind {
        NoiseKind::Global => {
            let xi: f64 = StandardNormal.sample(rng);
            let phi = sigma * xi;
            for (o, &b) in out.iter_mut().zip(support) {
                let m = n as i64 - 2 * b.count_ones() as i64;
                *o = 0.5 * phi * m as f64;
            }
        }
        NoiseKind::Local => {
            for k in kicks.iter_mut() {
                let xi: f64 = StandardNormal.sample(rng);
                *k = sigma * xi;
            }
            for (o, &b) in out.iter_mut().zip(support) {
                let mut acc = 0.0;
                for (q, &k) in kicks.iter().enumerate() {
                    if b >> q & 1 == 0 {
                        acc += k;
                    } else {
                        acc -= k;
                    }
                }
                *o = 0.5 * acc;
            }
        }
    }
}

fn run_block(
    table: &PairTable,
    kind: NoiseKind,
    n: usize,
    sigma: f64,
    seed: u64,
    block: u64,
    count: u64,
) -> Vec<[Moments; 6]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    let s = table.support.len();
    let np = table.pairs.len();
    let mut kicks = vec![0.0; n];
    let mut angles = vec![0.0; s];
    let mut u = vec![Complex64::default(); s];
    let mut g_re = vec![0.0; np];
    let mut g_im = vec![0.0; np];
    let mut acc = vec![[Moments::default(); 6]; table.states];
    for i in 0..count {
        let inv = 1.0 / (i + 1) as f64;
        draw_angles(kind, n, sigma, &table.support, &mut rng, &mut kicks, &mut angles);
        for (ua, &th) in u.iter_mut().zip(&angles) {
            *ua = Complex64::from_polar(1.0, -th);
        }
        for (p, &(a, b)) in table.pairs.iter().enumerate() {
            let g = u[a].conj() * u[b];
            g_re[p] = g.re;
            g_im[p] = g.im;
        }
        for (st, moments) in acc.iter_mut().enumerate() {
            for (k, m) in moments.iter_mut().enumerate() {
                let base = (st * 6 + k) * np;
                let vr = &table.v_re[base..base + np];
                let vi = &table.v_im[base..base + np];
                let mut x = table.diag[st][k];
                for p in 0..np {
                    x += vr[p] * g_re[p] - vi[p] * g_im[p];
                }
                m.push(x, inv);
            }
        }
    }
    acc
}

/// Monte Carlo estimates for several logical states sharing the same noise
/// draws. Entry `i` equals `monte_carlo_oracle` on `angles[i]` bit for bit.
pub fn monte_carlo_batch(
    frame: &LogicalFrame,
    angles: &[(f64, f64)],
    model: &NoiseModel,
    t: f64,
    samples: u64,
    seed: u64,
) -> Result<Vec<MonteCarloRecord>, NoiseError> {
    super::check_time(t)?;
    if samples == 0 {
        return Err(NoiseError::InvalidModel("at least one sample is required".into()));
    }
    let states = angles.iter().map(|&(th, ph)| frame.state(th, ph)).collect::<Result<Vec<_>, _>>()?;
    let table = PairTable::new(frame, &states);
    let sigma = model.phase_variance(t).sqrt();
    let blocks = samples.div_ceil(BLOCK);
    let partial: Vec<Vec<[Moments; 6]>> = (0..blocks)
        .into_par_iter()
        .map(|b| run_block(&table, model.kind, frame.n, sigma, seed, b, BLOCK.min(samples - b * BLOCK)))
        .collect();
    let mut total = vec![[Moments::default(); 6]; states.len()];
    for block in partial {
        for (tot, part) in total.iter_mut().zip(block) {
            for (a, b) in tot.iter_mut().zip(part) {
                *a = a.merge(b);
            }
        }
    }
    Ok(total
        .into_iter()
        .map(|m| MonteCarloRecord {
            mean: ObservableRecord::from_values(t, m.map(|x| x.mean)),
            se: m.map(|x| x.standard_error()),
            samples,
        })
        .collect())
}

/// Monte Carlo estimate of the six observables of `(θ, φ)` at time `t`.
pub fn monte_carlo_oracle(
    frame: &LogicalFrame,
    theta: f64,
    phi: f64,
    model: &NoiseModel,
    t: f64,
    samples: u64,
    seed: u64,
) -> Result<MonteCarloRecord, NoiseError> {
    Ok(monte_carlo_batch(frame, &[(theta, phi)], model, t, samples, seed)?.remove(0))
}
