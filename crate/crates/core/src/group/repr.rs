//! Concrete realizations behind [`FiniteGroup`](super::FiniteGroup).
//!
//! Every element has a fixed-length code: image arrays for permutations,
//! row-major residues for matrices, `v ++ f` for affine pairs and index
//! pairs for groups assembled from already-built factors.

use std::sync::Arc;

use crate::arith::neg_mod;
use crate::matrix;

use super::{FiniteGroup, GroupError};

#[derive(Debug)]
pub(crate) enum Repr {
    Cyclic(u32),
    Abelian(Vec<u32>),
    Perm { n: usize, even_only: bool },
    Matrix { n: usize, p: u32 },
    Affine { n: usize, p: u32 },
    Extension {
        p: u32,
        base: Arc<FiniteGroup>,
        cocycle: Arc<Vec<u32>>,
    },
    Quotient {
        parent: Arc<FiniteGroup>,
        coset_rep: Arc<Vec<u32>>,
    },
    Product(Arc<FiniteGroup>, Arc<FiniteGroup>),
}

impl Repr {
    pub fn code_len(&self) -> usize {
        match self {
            Repr::Cyclic(_) => 1,
            Repr::Abelian(ds) => ds.len(),
            Repr::Perm { n, .. } => *n,
            Repr::Matrix { n, .. } => n * n,
            Repr::Affine { n, .. } => n + n * n,
            Repr::Extension { .. } | Repr::Product(..) => 2,
            Repr::Quotient { .. } => 1,
        }
    }

    pub fn identity(&self) -> Vec<u32> {
        match self {
            Repr::Cyclic(_) => vec![0],
            Repr::Abelian(ds) => vec![0; ds.len()],
            Repr::Perm { n, .. } => (0..*n as u32).collect(),
            Repr::Matrix { n, .. } => matrix::identity(*n),
            Repr::Affine { n, .. } => {
                let mut c = vec![0; *n];
                c.extend(matrix::identity(*n));
                c
            }
            Repr::Extension { p, base, .. } => {
                // The identity is the unique idempotent (a, e): 2a + h(e,e) = a.
                let e = base.identity();
                let a = (0..*p)
                    .find(|&a| self.mul(&[a, e], &[a, e]) == [a, e])
                    .expect("extension has an idempotent");
                vec![a, e]
            }
            Repr::Quotient { coset_rep, .. } => vec![coset_rep[0]],
            Repr::Product(a, b) => vec![a.identity(), b.identity()],
        }
    }

    pub fn generators(&self) -> Vec<Vec<u32>> {
        match self {
            Repr::Cyclic(k) => {
                if *k > 1 {
                    vec![vec![1]]
                } else {
                    vec![]
                }
            }
            Repr::Abelian(ds) => (0..ds.len())
                .filter(|&i| ds[i] > 1)
                .map(|i| {
                    let mut c = vec![0; ds.len()];
                    c[i] = 1;
                    c
                })
                .collect(),
            Repr::Perm { n, even_only } => {
                let n = *n;
                let cycle = |pts: &[usize]| {
                    let mut c: Vec<u32> = (0..n as u32).collect();
                    for w in 0..pts.len() {
                        c[pts[w]] = pts[(w + 1) % pts.len()] as u32;
                    }
                    c
                };
                if *even_only {
                    (2..n).map(|i| cycle(&[0, 1, i])).collect()
                } else if n >= 3 {
                    vec![cycle(&[0, 1]), cycle(&(0..n).collect::<Vec<_>>())]
                } else if n == 2 {
                    vec![cycle(&[0, 1])]
                } else {
                    vec![]
                }
            }
            Repr::Matrix { n, .. } => elementary_generators(*n),
            Repr::Affine { n, .. } => {
                let n = *n;
                let mut gens = Vec::new();
                for i in 0..n {
                    let mut c = vec![0; n];
                    c[i] = 1;
                    c.extend(matrix::identity(n));
                    gens.push(c);
                }
                for m in elementary_generators(n) {
                    let mut c = vec![0; n];
                    c.extend(m);
                    gens.push(c);
                }
                gens
            }
            Repr::Extension { p, base, .. } => {
                let id = self.identity();
                let mut gens = vec![vec![(id[0] + 1) % p, id[1]]];
                gens.extend(base.generators().iter().map(|&g| vec![0, g]));
                gens
            }
            Repr::Quotient { parent, coset_rep } => parent
                .generators()
                .iter()
                .map(|&g| vec![coset_rep[g as usize]])
                .collect(),
            Repr::Product(a, b) => {
                let mut gens: Vec<Vec<u32>> =
                    a.generators().iter().map(|&g| vec![g, b.identity()]).collect();
                gens.extend(b.generators().iter().map(|&g| vec![a.identity(), g]));
                gens
            }
        }
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        match self {
            Repr::Cyclic(k) => vec![(x[0] + y[0]) % k],
            Repr::Abelian(ds) => ds
                .iter()
                .enumerate()
                .map(|(i, d)| (x[i] + y[i]) % d)
                .collect(),
            // (x·y)(i) = x(y(i)): the right factor acts first.
            Repr::Perm { .. } => y.iter().map(|&i| x[i as usize]).collect(),
            Repr::Matrix { n, p } => matrix::mul(*n, *p, x, y),
            Repr::Affine { n, p } => {
                let (v, f) = x.split_at(*n);
                let (u, g) = y.split_at(*n);
                let fu = matrix::apply(*n, *p, f, u);
                let mut out: Vec<u32> = v.iter().zip(&fu).map(|(a, b)| (a + b) % p).collect();
                out.extend(matrix::mul(*n, *p, f, g));
                out
            }
            Repr::Extension { p, base, cocycle } => {
                let h = cocycle[x[1] as usize * base.order() + y[1] as usize];
                let a = (x[0] as u64 + y[0] as u64 + h as u64) % *p as u64;
                vec![a as u32, base.mul_by_codes(x[1], y[1])]
            }
            Repr::Quotient { parent, coset_rep } => {
                vec![coset_rep[parent.mul_by_codes(x[0], y[0]) as usize]]
            }
            Repr::Product(a, b) => vec![a.mul_by_codes(x[0], y[0]), b.mul_by_codes(x[1], y[1])],
        }
    }

    pub fn inv(&self, x: &[u32]) -> Vec<u32> {
        match self {
            Repr::Cyclic(k) => vec![(k - x[0]) % k],
            Repr::Abelian(ds) => ds.iter().zip(x).map(|(d, a)| (d - a) % d).collect(),
            Repr::Perm { .. } => {
                let mut out = vec![0; x.len()];
                for (i, &xi) in x.iter().enumerate() {
                    out[xi as usize] = i as u32;
                }
                out
            }
            Repr::Matrix { n, p } => matrix::inverse(*n, *p, x).expect("SL element is invertible"),
            Repr::Affine { n, p } => {
                let (v, f) = x.split_at(*n);
                let finv = matrix::inverse(*n, *p, f).expect("invertible linear part");
                let w = matrix::apply(*n, *p, &finv, v);
                let mut out: Vec<u32> = w.iter().map(|&a| neg_mod(a as u64, *p as u64) as u32).collect();
                out.extend(finv);
                out
            }
            Repr::Extension { p, base, .. } => {
                // Solved against the multiplication rule, not a closed formula.
                let id = self.identity();
                let xinv = base.inverse(x[1]);
                let a = (0..*p)
                    .find(|&a| self.mul(x, &[a, xinv]) == id)
                    .expect("extension element has an inverse");
                vec![a, xinv]
            }
            Repr::Quotient { parent, coset_rep } => vec![coset_rep[parent.inverse(x[0]) as usize]],
            Repr::Product(a, b) => vec![a.inverse(x[0]), b.inverse(x[1])],
        }
    }

    pub fn format(&self, x: &[u32]) -> String {
        match self {
            Repr::Cyclic(_) => x[0].to_string(),
            Repr::Abelian(_) | Repr::Matrix { .. } => matrix::format(x),
            Repr::Perm { .. } => crate::perm::Permutation::from_images_unchecked(x.to_vec()).to_string(),
            Repr::Affine { n, .. } => format!("{}|{}", matrix::format(&x[..*n]), matrix::format(&x[*n..])),
            Repr::Extension { base, .. } => format!("{}|{}", x[0], wrap(&base.format(x[1]))),
            Repr::Quotient { parent, .. } => parent.format(x[0]),
            Repr::Product(a, b) => format!("{}|{}", wrap(&a.format(x[0])), wrap(&b.format(x[1]))),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Vec<u32>, GroupError> {
        let text = strip_brackets(text.trim());
        let bad = |reason: &str| GroupError::BadElement {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        match self {
            Repr::Cyclic(k) => {
                let v: i64 = text.parse().map_err(|_| bad("expected an integer"))?;
                Ok(vec![v.rem_euclid(*k as i64) as u32])
            }
            Repr::Abelian(ds) => {
                let vals = parse_ints(text).ok_or_else(|| bad("expected comma-separated integers"))?;
                if vals.len() != ds.len() {
                    return Err(bad("wrong number of coordinates"));
                }
                Ok(vals.iter().zip(ds).map(|(v, d)| v.rem_euclid(*d as i64) as u32).collect())
            }
            Repr::Perm { n, .. } => {
                let perm = crate::perm::Permutation::parse(text, *n).map_err(|e| bad(&e.to_string()))?;
                Ok(perm.images().to_vec())
            }
            Repr::Matrix { n, p } => {
                let vals = parse_ints(text).ok_or_else(|| bad("expected comma-separated residues"))?;
                if vals.len() != n * n {
                    return Err(bad("wrong number of matrix entries"));
                }
                Ok(vals.iter().map(|v| v.rem_euclid(*p as i64) as u32).collect())
            }
            Repr::Affine { n, p } => {
                let parts = split_top(text, '|');
                if parts.len() != 2 {
                    return Err(bad("expected <vector>|<matrix>"));
                }
                let v = parse_ints(parts[0]).ok_or_else(|| bad("bad vector"))?;
                let m = parse_ints(parts[1]).ok_or_else(|| bad("bad matrix"))?;
                if v.len() != *n || m.len() != n * n {
                    return Err(bad("wrong number of entries"));
                }
                Ok(v.iter().chain(&m).map(|x| x.rem_euclid(*p as i64) as u32).collect())
            }
            Repr::Extension { p, base, .. } => {
                let parts = split_top(text, '|');
                if parts.len() != 2 {
                    return Err(bad("expected <residue>|<base element>"));
                }
                let a: i64 = parts[0].trim().parse().map_err(|_| bad("bad residue"))?;
                let x = base.parse_element(parts[1])?;
                Ok(vec![a.rem_euclid(*p as i64) as u32, x])
            }
            Repr::Quotient { parent, coset_rep } => {
                let x = parent.parse_element(text)?;
                Ok(vec![coset_rep[x as usize]])
            }
            Repr::Product(a, b) => {
                let parts = split_top(text, '|');
                if parts.len() != 2 {
                    return Err(bad("expected <left>|<right>"));
                }
                Ok(vec![a.parse_element(parts[0])?, b.parse_element(parts[1])?])
            }
        }
    }
}

/// x_ij(1) for all i ≠ j, ordered by (i, j).
fn elementary_generators(n: usize) -> Vec<Vec<u32>> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = matrix::identity(n);
                m[i * n + j] = 1;
                gens.push(m);
            }
        }
    }
    gens
}

fn wrap(s: &str) -> String {
    if s.contains('|') {
        format!("[{s}]")
    } else {
        s.to_string()
    }
}

fn parse_ints(text: &str) -> Option<Vec<i64>> {
    text.split(',').map(|t| t.trim().parse().ok()).collect()
}

/// Splits at `sep` occurrences outside any bracket or parenthesis.
pub(crate) fn split_top(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Removes one pair of enclosing square brackets if they match each other.
pub(crate) fn strip_brackets(text: &str) -> &str {
    if !(text.starts_with('[') && text.ends_with(']')) {
        return text;
    }
    let mut depth = 0i32;
    for (i, c) in text.char_indices() {
        match c {
            '[' => depth += 1,
            ']' => {
                depth -= 1;
                if depth == 0 && i + 1 != text.len() {
                    return text;
                }
            }
            _ => {}
        }
    }
    &text[1..text.len() - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn top_level_split() {
        assert_eq!(split_top("[1|2]|3", '|'), vec!["[1|2]", "3"]);
        assert_eq!(split_top("(1,2),(3,4)", ','), vec!["(1,2)", "(3,4)"]);
        assert_eq!(strip_brackets("[a|b]"), "a|b");
        assert_eq!(strip_brackets("[a]|[b]"), "[a]|[b]");
    }
}
