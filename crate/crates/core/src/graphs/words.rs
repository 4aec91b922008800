//! Counting words that avoid a set of forbidden factors.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Trie with failure links; `bad[s]` marks states whose read suffix contains a forbidden word.
struct FactorAutomaton {
    next: Vec<Vec<u32>>,
    bad: Vec<bool>,
}

impl FactorAutomaton {
    fn new(alphabet: usize, forbidden: &[Vec<u8>]) -> Self {
        let mut goto: Vec<Vec<u32>> = vec![vec![u32::MAX; alphabet]];
        let mut bad = vec![false];
        for w in forbidden {
            let mut s = 0usize;
            for &c in w {
                let c = c as usize;
                if goto[s][c] == u32::MAX {
                    goto[s][c] = goto.len() as u32;
                    goto.push(vec![u32::MAX; alphabet]);
                    bad.push(false);
                }
                s = goto[s][c] as usize;
            }
            bad[s] = true;
        }
        // breadth-first completion of the transition table
        let mut fail = vec![0u32; goto.len()];
        let mut queue = VecDeque::new();
        for c in 0..alphabet {
            match goto[0][c] {
                u32::MAX => goto[0][c] = 0,
                t => {
                    fail[t as usize] = 0;
                    queue.push_back(t);
                }
            }
        }
        while let Some(s) = queue.pop_front() {
            let s = s as usize;
            bad[s] = bad[s] || bad[fail[s] as usize];
            for c in 0..alphabet {
                let t = goto[s][c];
                if t == u32::MAX {
                    goto[s][c] = goto[fail[s] as usize][c];
                } else {
                    fail[t as usize] = goto[fail[s] as usize][c];
                    queue.push_back(t);
                }
            }
        }
        FactorAutomaton { next: goto, bad }
    }
}

/// Number of words of each length `0..=n_max` over `0..alphabet` with no forbidden factor.
///
/// With an involution, only freely reduced words (no letter followed by its inverse) count.
pub fn count_avoiding_words(
    alphabet: usize,
    forbidden: &[Vec<u8>],
    n_max: usize,
    involution: Option<&[u8]>,
) -> Result<Vec<u128>> {
    if forbidden.iter().any(|w| w.is_empty() || w.iter().any(|&c| c as usize >= alphabet)) {
        return Err(Error::Domain("forbidden words must be nonempty words over the alphabet".into()));
    }
    if let Some(inv) = involution {
        let ok = inv.len() == alphabet
            && inv.iter().enumerate().all(|(a, &b)| (b as usize) < alphabet && inv[b as usize] as usize == a);
        if !ok {
            return Err(Error::Domain("involution must be a permutation of order two on the alphabet".into()));
        }
    }
    let fa = FactorAutomaton::new(alphabet, forbidden);
    let states = fa.next.len();
    // product state: automaton state × (last letter + 1, with 0 for the empty word)
    let width = alphabet + 1;
    let mut cur = vec![0u128; states * width];
    cur[0] = 1;
    let mut counts = vec![1u128];
    for _ in 1..=n_max {
        let mut nxt = vec![0u128; states * width];
        for s in 0..states {
            for last in 0..width {
                let c = cur[s * width + last];
                if c == 0 {
                    continue;
                }
                for a in 0..alphabet {
                    if let (Some(inv), true) = (involution, last > 0) {
                        if inv[last - 1] as usize == a {
                            continue;
                        }
                    }
                    let t = fa.next[s][a] as usize;
                    if fa.bad[t] {
                        continue;
                    }
                    let slot = &mut nxt[t * width + a + 1];
                    *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
                }
            }
        }
        counts.push(nxt.iter().try_fold(0u128, |acc, &x| acc.checked_add(x)).ok_or(Error::Overflow)?);
        cur = nxt;
    }
    Ok(counts)
}

/// Letters `a_i, A_i, b_i, B_i` of the genus-`g` surface group as `4(i−1) + {0,1,2,3}`.
pub fn surface_involution(g: usize) -> Vec<u8> {
    (0..4 * g as u8).map(|x| x ^ 1).collect()
}

/// All length-`(4g−1)` cyclic factors of the relator `Π [a_i, b_i]` and its inverse.
pub fn surface_forbidden_factors(g: usize) -> Vec<Vec<u8>> {
    let mut r = Vec::with_capacity(4 * g);
    for i in 0..g as u8 {
        let (a, inv_a, b, inv_b) = (4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3);
        r.extend([a, b, inv_a, inv_b]);
    }
    let inv: Vec<u8> = r.iter().rev().map(|&x| x ^ 1).collect();
    let len = r.len();
    let mut out = Vec::new();
    for word in [r, inv] {
        for start in 0..len {
            out.push((0..len - 1).map(|j| word[(start + j) % len]).collect());
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unrestricted_reduced_words() {
        let inv = surface_involution(2);
        let counts = count_avoiding_words(8, &[], 8, Some(&inv)).unwrap();
        for (n, c) in counts.iter().enumerate().skip(1) {
            assert_eq!(*c, 8 * 7u128.pow(n as u32 - 1));
        }
        let all = count_avoiding_words(3, &[], 5, None).unwrap();
        assert_eq!(all, vec![1, 3, 9, 27, 81, 243]);
    }

    #[test]
    fn simple_forbidden_factor() {
        // binary words without "11": Fibonacci numbers
        let counts = count_avoiding_words(2, &[vec![1, 1]], 8, None).unwrap();
        assert_eq!(counts, vec![1, 2, 3, 5, 8, 13, 21, 34, 55]);
        // overlapping patterns: avoid "010" and "101"
        let brute = |n: usize| {
            (0..1u32 << n)
                .filter(|&x| {
                    let bits: Vec<u32> = (0..n).map(|i| (x >> i) & 1).collect();
                    !bits.windows(3).any(|w| w == [0, 1, 0] || w == [1, 0, 1])
                })
                .count() as u128
        };
        let counts = count_avoiding_words(2, &[vec![0, 1, 0], vec![1, 0, 1]], 10, None).unwrap();
        for n in 0..=10 {
            assert_eq!(counts[n], brute(n));
        }
    }

    #[test]
    fn genus_two_factors() {
        let f = surface_forbidden_factors(2);
        assert_eq!(f.len(), 16);
        assert!(f.iter().all(|w| w.len() == 7));
        assert!(f.contains(&vec![0, 2, 1, 3, 4, 6, 5]));
        let counts = count_avoiding_words(8, &f, 9, Some(&surface_involution(2))).unwrap();
        assert_eq!(&counts[..9], &[1, 8, 56, 392, 2744, 19208, 134456, 941176, 6588136]);
    }

    #[test]
    fn invalid_inputs() {
        assert!(count_avoiding_words(2, &[vec![]], 3, None).is_err());
        assert!(count_avoiding_words(2, &[vec![2]], 3, None).is_err());
        assert!(count_avoiding_words(3, &[], 3, Some(&[1, 0, 0])).is_err());
    }
}
