use super::ThickError;

/// Classical two-color Ramsey numbers from a fixed table.
pub fn ramsey_bound(n: usize, m: usize) -> Result<usize, ThickError> {
    let (a, b) = (n.min(m), n.max(m));
    match (a, b) {
        (1, _) => Ok(1),
        (2, _) => Ok(b),
        (3, 3) => Ok(6),
        (3, 4) => Ok(9),
        (3, 5) => Ok(14),
        (4, 4) => Ok(18),
        _ => Err(ThickError::OutOfTable(n, m)),
    }
}

/// Whether some graph on `v` vertices has no clique of size `s` and no
/// independent set of size `t`. Vertices are added one at a time; each new
/// vertex chooses its neighbours among the earlier ones.
pub fn ramsey_witness_exists(s: usize, t: usize, v: usize) -> bool {
    assert!(v <= 16, "search is meant for tiny graphs");
    let mut adj = vec![0u32; v];
    extend(s, t, v, 0, &mut adj)
}

fn extend(s: usize, t: usize, v: usize, k: usize, adj: &mut [u32]) -> bool {
    if k == v {
        return true;
    }
    let prev = (1u32 << k) - 1;
    for nbrs in 0..=prev {
        // New cliques and independent sets all pass through vertex k.
        if has_clique(adj, nbrs, s - 1) || has_clique_complement(adj, prev & !nbrs, t - 1, k) {
            continue;
        }
        adj[k] = nbrs;
        for u in 0..k {
            if nbrs >> u & 1 == 1 {
                adj[u] |= 1 << k;
            }
        }
        if extend(s, t, v, k + 1, adj) {
            return true;
        }
        for u in 0..k {
            adj[u] &= !(1 << k);
        }
        adj[k] = 0;
    }
    false
}

/// Clique of the given size inside vertex set `within`.
fn has_clique(adj: &[u32], within: u32, size: usize) -> bool {
    if size == 0 {
        return true;
    }
    let mut rest = within;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique(adj, rest & adj[u], size - 1) {
            return true;
        }
    }
    false
}

fn has_clique_complement(adj: &[u32], within: u32, size: usize, k: usize) -> bool {
    if size == 0 {
        return true;
    }
    let all = (1u32 << k) - 1;
    let mut rest = within;
    while rest != 0 {
        let u = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if has_clique_complement(adj, rest & !adj[u] & all, size - 1, k) {
            return true;
        }
    }
    false
}

/// R(3,3) = 6 by brute force over all 2-colorings of K₅ and K₆.
pub fn verify_r33() -> bool {
    fn mono_triangle(n: usize, coloring: u32) -> bool {
        let mut idx = [[0usize; 6]; 6];
        let mut e = 0;
        for i in 0..n {
            for j in i + 1..n {
                idx[i][j] = e;
                e += 1;
            }
        }
        let c = |i: usize, j: usize| coloring >> idx[i][j] & 1;
        (0..n).any(|a| {
            (a + 1..n).any(|b| (b + 1..n).any(|d| c(a, b) == c(a, d) && c(a, d) == c(b, d)))
        })
    }
    let k5_avoids = (0u32..1 << 10).any(|col| !mono_triangle(5, col));
    let k6_forces = (0u32..1 << 15).all(|col| mono_triangle(6, col));
    k5_avoids && k6_forces
}
