//! Binary asymmetric channel: the weight `gamma`, discrepancy, and noise.

use rand::Rng;

use crate::bits::BitWord;
use crate::codeword::{Codeword, ObservedGraph};
use crate::error::{Error, Result};

/// Crossover probabilities of a binary asymmetric channel.
///
/// `p` is the chance a missing edge appears (0 -> 1), `q` the chance a
/// present edge disappears (1 -> 0). In planted-partition terms
/// `p = Q` (between-cluster edge probability) and `q = 1 - P`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelParams {
    p: f64,
    q: f64,
    gamma: f64,
}

/// `log(p / (1 - q)) / log(q / (1 - p))`, requiring `0 < p <= q` and `p + q < 1`.
pub fn gamma(p: f64, q: f64) -> Result<f64> {
    let bad = |constraint| Err(Error::ChannelDomain { p, q, constraint });
    if !(p.is_finite() && q.is_finite()) {
        return bad("p and q must be finite");
    }
    if p <= 0.0 {
        return bad("p must be > 0");
    }
    if p > q {
        return bad("p must be <= q");
    }
    if p + q >= 1.0 {
        return bad("p + q must be < 1");
    }
    if p == q {
        return Ok(1.0);
    }
    Ok((p / (1.0 - q)).ln() / (q / (1.0 - p)).ln())
}

impl ChannelParams {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        let gamma = gamma(p, q)?;
        Ok(Self { p, q, gamma })
    }

    /// Channel from planted-partition edge probabilities `P` (within) and `Q` (between).
    pub fn from_planted(within: f64, between: f64) -> Result<Self> {
        Self::new(between, 1.0 - within)
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `gamma * d10 + d01` from integer disagreement counts.
    #[inline]
    pub fn weigh(&self, d10: usize, d01: usize) -> f64 {
        self.gamma * d10 as f64 + d01 as f64
    }
}

/// Discrepancy of `x` from the received word `y`: `gamma * d10(y, x) + d01(y, x)`.
pub fn discrepancy(y: &BitWord, x: &BitWord, ch: &ChannelParams) -> Result<f64> {
    if y.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: y.len(),
            right: x.len(),
        });
    }
    let (d10, d01) = y.cross_counts(x);
    Ok(ch.weigh(d10, d01))
}

/// Discrepancy of a codeword from an observation of the same graph size.
#[inline]
pub fn observed_discrepancy(y: &ObservedGraph, x: &Codeword, ch: &ChannelParams) -> f64 {
    let (d10, d01) = y.bits().cross_counts(x.bits());
    ch.weigh(d10, d01)
}

/// Passes a word through the channel: each 1 drops with probability `q`,
/// each 0 flips on with probability `p`.
pub fn transmit_bits<R: Rng + ?Sized>(x: &BitWord, ch: &ChannelParams, rng: &mut R) -> BitWord {
    let mut out = x.clone();
    for i in 0..x.len() {
        let flip = if x.get(i) {
            rng.random_bool(ch.q)
        } else {
            rng.random_bool(ch.p)
        };
        if flip {
            out.flip(i);
        }
    }
    out
}

pub fn transmit<R: Rng + ?Sized>(x: &Codeword, ch: &ChannelParams, rng: &mut R) -> ObservedGraph {
    let bits = transmit_bits(x.bits(), ch, rng);
    ObservedGraph::new(x.n(), bits).expect("length preserved")
}

/// Exact BAC likelihood `P(y | x)`.
pub fn likelihood(y: &BitWord, x: &BitWord, ch: &ChannelParams) -> f64 {
    let (d10, d01) = y.cross_counts(x);
    let ones_kept = x.weight() - d01;
    let zeros_kept = x.len() - x.weight() - d10;
    ch.p.powi(d10 as i32)
        * (1.0 - ch.p).powi(zeros_kept as i32)
        * ch.q.powi(d01 as i32)
        * (1.0 - ch.q).powi(ones_kept as i32)
}
