//! Maximum cliques in Cayley-type graphs, lexicographically least witness.

#[derive(Clone)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        Bits {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn unset(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + t)
            })
        })
    }
}

/// Dense undirected graph on `0..n`.
pub(crate) struct Graph {
    adj: Vec<Bits>,
}

impl Graph {
    pub fn new(n: usize, edge: impl Fn(usize, usize) -> bool) -> Self {
        let mut adj = vec![Bits::new(n); n];
        for i in 0..n {
            for j in i + 1..n {
                if edge(i, j) {
                    adj[i].set(j);
                    adj[j].set(i);
                }
            }
        }
        Graph { adj }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    /// Number of colors in a greedy coloring of `cand`; bounds its clique number.
    fn color_bound(&self, cand: &Bits) -> usize {
        let mut rest = cand.clone();
        let mut colors = 0;
        while !rest.is_empty() {
            colors += 1;
            let mut avail = rest.clone();
            while let Some(v) = avail.first() {
                avail.unset(v);
                rest.unset(v);
                for (a, b) in avail.words.iter_mut().zip(&self.adj[v].words) {
                    *a &= !b;
                }
            }
        }
        colors
    }

    /// Lexicographically least maximum clique, or the first clique of size
    /// `cap` if one exists.
    pub fn max_clique(&self, cap: usize) -> Vec<usize> {
        let n = self.len();
        let mut all = Bits::new(n);
        for i in 0..n {
            all.set(i);
        }
        let mut best = Vec::new();
        let mut cur = Vec::new();
        self.expand(&mut cur, all, &mut best, cap);
        best
    }

    fn expand(&self, cur: &mut Vec<usize>, cand: Bits, best: &mut Vec<usize>, cap: usize) {
        if best.len() >= cap {
            return;
        }
        if cand.is_empty() || cur.len() >= cap {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            return;
        }
        if cur.len() + cand.count() <= best.len() || cur.len() + self.color_bound(&cand) <= best.len() {
            return;
        }
        let mut rest = cand;
        let order: Vec<usize> = rest.iter().collect();
        for v in order {
            if cur.len() + rest.count() <= best.len() || best.len() >= cap {
                return;
            }
            rest.unset(v);
            cur.push(v);
            let next = rest.and(&self.adj[v]);
            self.expand(cur, next, best, cap);
            cur.pop();
        }
    }

    /// Greedy clique in index order, for lower bounds on large inputs.
    pub fn greedy_clique(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for v in 0..self.len() {
            if out.iter().all(|&u| self.adj[u].words[v / 64] >> (v % 64) & 1 == 1) {
                out.push(v);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(n: usize, edge: &impl Fn(usize, usize) -> bool) -> Vec<usize> {
        let mut best: Vec<usize> = Vec::new();
        // Subsets in lexicographic order of their sorted element lists.
        let mut subsets: Vec<Vec<usize>> = (0u32..1 << n)
            .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
            .collect();
        subsets.sort();
        for s in subsets {
            let ok = s.iter().enumerate().all(|(k, &a)| s[k + 1..].iter().all(|&b| edge(a, b)));
            if ok && s.len() > best.len() {
                best = s;
            }
        }
        best
    }

    #[test]
    fn matches_brute_force() {
        for seed in 0..40u64 {
            let n = 4 + (seed % 9) as usize;
            let edge = |a: usize, b: usize| {
                let (a, b) = (a.min(b) as u64, a.max(b) as u64);
                (a * 31 + b * 17 + seed * 7).wrapping_mul(2654435761) % 7 < 4
            };
            let g = Graph::new(n, edge);
            assert_eq!(g.max_clique(usize::MAX), brute(n, &edge), "seed {seed}");
        }
    }

    #[test]
    fn cap_stops_early() {
        let g = Graph::new(30, |_, _| true);
        assert_eq!(g.max_clique(5).len(), 5);
        assert_eq!(g.max_clique(usize::MAX).len(), 30);
        assert_eq!(g.greedy_clique().len(), 30);
    }
}
