//! Dense square matrices over a prime field, stored row-major as residues.
//!
//! These are slice-level kernels used both by the group realizations and by
//! the typed `SlMatrix` in the Chevalley module.

use crate::arith::{inv_mod, neg_mod};

pub fn identity(n: usize) -> Vec<u32> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

pub fn mul_into(n: usize, p: u32, a: &[u32], b: &[u32], out: &mut [u32]) {
    let p = p as u64;
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u64;
            for k in 0..n {
                acc += a[i * n + k] as u64 * b[k * n + j] as u64;
            }
            out[i * n + j] = (acc % p) as u32;
        }
    }
}

pub fn mul(n: usize, p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0; n * n];
    mul_into(n, p, a, b, &mut out);
    out
}

pub fn apply(n: usize, p: u32, m: &[u32], v: &[u32]) -> Vec<u32> {
    let p = p as u64;
    (0..n)
        .map(|i| {
            let acc: u64 = (0..n).map(|k| m[i * n + k] as u64 * v[k] as u64).sum();
            (acc % p) as u32
        })
        .collect()
}

/// Determinant by Gaussian elimination.
pub fn det(n: usize, p: u32, m: &[u32]) -> u32 {
    let pp = p as u64;
    let mut a: Vec<u64> = m.iter().map(|&x| x as u64).collect();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
            return 0;
        };
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            det = neg_mod(det, pp);
        }
        let d = a[col * n + col];
        det = det * d % pp;
        let dinv = inv_mod(d, pp);
        for r in col + 1..n {
            let f = a[r * n + col] * dinv % pp;
            if f == 0 {
                continue;
            }
            for k in col..n {
                a[r * n + k] = (a[r * n + k] + pp - f * a[col * n + k] % pp) % pp;
            }
        }
    }
    det as u32
}

/// Inverse by Gauss-Jordan elimination; `None` for singular input.
pub fn inverse(n: usize, p: u32, m: &[u32]) -> Option<Vec<u32>> {
    let pp = p as u64;
    let w = 2 * n;
    let mut a = vec![0u64; n * w];
    for i in 0..n {
        for j in 0..n {
            a[i * w + j] = m[i * n + j] as u64;
        }
        a[i * w + n + i] = 1;
    }
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r * w + col] != 0)?;
        if piv != col {
            for k in 0..w {
                a.swap(piv * w + k, col * w + k);
            }
        }
        let dinv = inv_mod(a[col * w + col], pp);
        for k in 0..w {
            a[col * w + k] = a[col * w + k] * dinv % pp;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r * w + col];
            if f == 0 {
                continue;
            }
            for k in 0..w {
                a[r * w + k] = (a[r * w + k] + pp - f * a[col * w + k] % pp) % pp;
            }
        }
    }
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = a[i * w + n + j] as u32;
        }
    }
    Some(out)
}

pub fn is_identity(n: usize, m: &[u32]) -> bool {
    (0..n).all(|i| (0..n).all(|j| m[i * n + j] == u32::from(i == j)))
}

/// Comma-separated row-major residues.
pub fn format(m: &[u32]) -> String {
    m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_det() {
        let m = vec![2, 1, 1, 1];
        assert_eq!(det(2, 5, &m), 1);
        let inv = inverse(2, 5, &m).unwrap();
        assert!(is_identity(2, &mul(2, 5, &m, &inv)));
        assert_eq!(inverse(2, 5, &[1, 2, 2, 4]), None);
        assert_eq!(det(3, 7, &[0, 1, 0, 1, 0, 0, 0, 0, 1]), 6);
    }
}
