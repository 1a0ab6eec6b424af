use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Kendall's tau-a between two orderings of the items `0..K`, each listed
/// best first.
pub fn kendall_tau(order_a: &[usize], order_b: &[usize]) -> Result<f64> {
    let k = order_a.len();
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "kendall tau needs at least 2 items, got {k}"
        )));
    }
    if order_b.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: order_b.len(),
        });
    }
    let pa = positions(order_a)?;
    let pb = positions(order_b)?;
    let mut balance = 0i64;
    for i in 0..k {
        for j in i + 1..k {
            let a = pa[i].cmp(&pa[j]);
            let b = pb[i].cmp(&pb[j]);
            balance += if a == b { 1 } else { -1 };
        }
    }
    Ok(balance as f64 / (k * (k - 1) / 2) as f64)
}

fn positions(order: &[usize]) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; order.len()];
    for (p, &item) in order.iter().enumerate() {
        match pos.get_mut(item) {
            Some(slot) if *slot == usize::MAX => *slot = p,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "{order:?} is not an ordering of 0..{}",
                    order.len()
                )))
            }
        }
    }
    Ok(pos)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignTest {
    pub p_value: f64,
    pub wins_a: usize,
    pub wins_b: usize,
    pub ties: usize,
}

/// Exact two-sided sign test on paired scores; tied pairs are dropped.
pub fn sign_test(scores_a: &[f64], scores_b: &[f64]) -> Result<SignTest> {
    if scores_a.len() != scores_b.len() {
        return Err(Error::DimensionMismatch {
            expected: scores_a.len(),
            found: scores_b.len(),
        });
    }
    if scores_a.is_empty() {
        return Err(Error::InvalidArgument("sign test needs at least one pair".into()));
    }
    let (mut wins_a, mut wins_b, mut ties) = (0, 0, 0);
    for (a, b) in scores_a.iter().zip(scores_b) {
        match a.partial_cmp(b) {
            Some(std::cmp::Ordering::Greater) => wins_a += 1,
            Some(std::cmp::Ordering::Less) => wins_b += 1,
            _ => ties += 1,
        }
    }
    Ok(SignTest {
        p_value: two_sided_binomial(wins_a + wins_b, wins_a.min(wins_b)),
        wins_a,
        wins_b,
        ties,
    })
}

/// `min(1, 2 · P[X ≤ k])` for `X ~ Binomial(n, 1/2)`, summed in log space.
fn two_sided_binomial(n: usize, k: usize) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let ln_half_n = -(n as f64) * std::f64::consts::LN_2;
    let mut ln_choose = 0.0;
    let mut tail = 0.0;
    for i in 0..=k {
        if i > 0 {
            ln_choose += ((n - i + 1) as f64).ln() - (i as f64).ln();
        }
        tail += (ln_choose + ln_half_n).exp();
    }
    (2.0 * tail).min(1.0)
}
