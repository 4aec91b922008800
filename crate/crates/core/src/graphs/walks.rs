//! Closed-walk and spiky-circuit counts at the root of a ball.

use std::fmt::Write as _;

use rug::{Integer, Rational};

use super::GraphBall;
use crate::error::{Error, Result};
use crate::series::{BiSeries, Series};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkCounts {
    /// `counts[n]` closed walks of length `n` at the root.
    pub counts: Vec<u128>,
    /// `spiky[n][s]` circuits of length `n` with exactly `s` spikes.
    pub spiky: Option<Vec<Vec<u128>>>,
}

impl WalkCounts {
    pub fn n_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn as_series(&self) -> Series {
        Series::new(self.counts.iter().map(|&c| Rational::from(Integer::from(c))).collect(), self.n_max())
    }

    /// The spiky table as a series in `t` with polynomial coefficients in `u`.
    pub fn spiky_series(&self) -> Option<BiSeries<Rational>> {
        let table = self.spiky.as_ref()?;
        let coeffs = table
            .iter()
            .map(|row| row.iter().map(|&c| Rational::from(Integer::from(c))).collect())
            .collect();
        BiSeries::new(coeffs, self.n_max()).ok()
    }

    /// `n,count` rows, or `n,count,spikes,spiky_count` rows when the spiky table is present.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.spiky {
            None => {
                out.push_str("n,count\n");
                for (n, c) in self.counts.iter().enumerate() {
                    let _ = writeln!(out, "{n},{c}");
                }
            }
            Some(table) => {
                out.push_str("n,count,spikes,spiky_count\n");
                for (n, row) in table.iter().enumerate() {
                    for (s, c) in row.iter().enumerate() {
                        let _ = writeln!(out, "{n},{},{s},{c}", self.counts[n]);
                    }
                }
            }
        }
        out
    }
}

fn check_radius(ball: &GraphBall, n_max: usize) -> Result<()> {
    if n_max > 2 * ball.complete_radius as usize {
        return Err(Error::RadiusTooSmall { n_max, radius: ball.complete_radius as usize });
    }
    Ok(())
}

/// Counts closed walks at the root by iterating the adjacency operator on the root indicator.
pub fn count_closed_walks(ball: &GraphBall, n_max: usize) -> Result<WalkCounts> {
    check_radius(ball, n_max)?;
    let nv = ball.vertex_count();
    let mut x = vec![0u128; nv];
    x[0] = 1;
    let mut counts = vec![1u128];
    for step in 1..=n_max {
        // only vertices within distance min(step, n_max − step) of the root matter
        let reach = step.min(n_max - step) as u32;
        let mut y = vec![0u128; nv];
        for v in 0..nv as u32 {
            if ball.layer(v) > reach {
                continue;
            }
            let mut acc: u128 = 0;
            for &w in ball.neighbors(v) {
                acc = acc.checked_add(x[w as usize]).ok_or(Error::Overflow)?;
            }
            y[v as usize] = acc;
        }
        counts.push(y[0]);
        x = y;
    }
    Ok(WalkCounts { counts, spiky: None })
}

/// Counts closed walks at the root by length and number of spikes (steps `e` followed by `ē`).
pub fn count_spiky_circuits(ball: &GraphBall, n_max: usize) -> Result<WalkCounts> {
    check_radius(ball, n_max)?;
    let nd = ball.dart_count();
    let width = n_max + 1;
    // state[e * width + s]: walks from the root whose last dart is e, with s spikes
    let mut state = vec![0u128; nd * width];
    let mut table = vec![vec![0u128; 1]];
    table[0][0] = 1;
    let mut counts = vec![1u128];
    for e in ball.darts(0) {
        state[e * width] = 1;
    }
    for n in 1..=n_max {
        let mut row = vec![0u128; n + 1];
        for e in ball.darts(0).map(|e| ball.reverse(e)) {
            for s in 0..n {
                row[s] = row[s].checked_add(state[e * width + s]).ok_or(Error::Overflow)?;
            }
        }
        counts.push(row.iter().try_fold(0u128, |a, &b| a.checked_add(b)).ok_or(Error::Overflow)?);
        table.push(row);
        if n == n_max {
            break;
        }
        let reach = (n_max - n) as u32;
        let mut next = vec![0u128; nd * width];
        for e in 0..nd {
            let base = e * width;
            if state[base..base + n].iter().all(|&c| c == 0) {
                continue;
            }
            let v = ball.target(e);
            let back = ball.reverse(e);
            for f in ball.darts(v) {
                if ball.layer(ball.target(f)) > reach {
                    continue;
                }
                let shift = usize::from(f == back);
                for s in 0..n {
                    let c = state[base + s];
                    if c != 0 {
                        let slot = &mut next[f * width + s + shift];
                        *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
                    }
                }
            }
        }
        state = next;
    }
    Ok(WalkCounts { counts, spiky: Some(table) })
}
