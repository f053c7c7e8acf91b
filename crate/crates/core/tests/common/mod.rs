//! Slow, simple reference implementations used only by the tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

/// A cell as sorted image sets.
pub type Cell = Vec<Vec<usize>>;

pub fn cycle_adj(n: usize) -> impl Fn(usize, usize) -> bool {
    move |a, b| {
        let d = (a as i64 - b as i64).rem_euclid(n as i64);
        d == 1 || d == n as i64 - 1
    }
}

pub fn path_adj() -> impl Fn(usize, usize) -> bool {
    |a, b| (a as i64 - b as i64).abs() == 1
}

/// Edges of the source cycle (the single edge for `m = 2`).
pub fn source_edges(m: usize) -> Vec<(usize, usize)> {
    if m == 2 {
        vec![(0, 1)]
    } else {
        (0..m).map(|i| (i, (i + 1) % m)).collect()
    }
}

/// Every cell of `Hom(C_m, H)` where `H` has vertices `1..=n`.
pub fn cells(m: usize, n: usize, adj: &dyn Fn(usize, usize) -> bool) -> Vec<Cell> {
    let subsets: Vec<Vec<usize>> =
        (1u32..1 << n).map(|s| (1..=n).filter(|&v| s >> (v - 1) & 1 == 1).collect()).collect();
    let edges = source_edges(m);
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    fn go(
        k: usize,
        m: usize,
        subsets: &[Vec<usize>],
        edges: &[(usize, usize)],
        adj: &dyn Fn(usize, usize) -> bool,
        current: &mut Vec<usize>,
        out: &mut Vec<Cell>,
    ) {
        if k == m {
            out.push(current.iter().map(|&s| subsets[s].clone()).collect());
            return;
        }
        for s in 0..subsets.len() {
            let fits = edges.iter().all(|&(x, y)| {
                let other = if x == k && y < k {
                    y
                } else if y == k && x < k {
                    x
                } else {
                    return true;
                };
                subsets[s].iter().all(|&a| subsets[current[other]].iter().all(|&b| adj(a, b)))
            });
            if fits {
                current.push(s);
                go(k + 1, m, subsets, edges, adj, current, out);
                current.pop();
            }
        }
    }
    go(0, m, &subsets, &edges, adj, &mut current, &mut out);
    out
}

pub fn dim(c: &Cell) -> usize {
    c.iter().map(|e| e.len() - 1).sum()
}

pub fn f_vector(cells: &[Cell]) -> Vec<usize> {
    let mut f = Vec::new();
    for c in cells {
        let d = dim(c);
        if f.len() <= d {
            f.resize(d + 1, 0);
        }
        f[d] += 1;
    }
    f
}

pub fn euler(f: &[usize]) -> i64 {
    f.iter().enumerate().map(|(d, &x)| if d % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// Faces of codimension one, unsigned.
pub fn facets(c: &Cell) -> Vec<Cell> {
    let mut out = Vec::new();
    for (k, e) in c.iter().enumerate() {
        if e.len() < 2 {
            continue;
        }
        for j in 0..e.len() {
            let mut f = c.clone();
            f[k].remove(j);
            out.push(f);
        }
    }
    out
}

/// Components by breadth-first search over edges; each component's cells.
pub fn components(cells: &[Cell]) -> Vec<Vec<Cell>> {
    let vertices: Vec<&Cell> = cells.iter().filter(|c| dim(c) == 0).collect();
    let index: HashMap<&Cell, usize> = vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut adj = vec![Vec::new(); vertices.len()];
    for c in cells.iter().filter(|c| dim(c) == 1) {
        let ends = facets(c);
        let (a, b) = (index[&ends[0]], index[&ends[1]]);
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut label = vec![usize::MAX; vertices.len()];
    let mut count = 0;
    for s in 0..vertices.len() {
        if label[s] != usize::MAX {
            continue;
        }
        let mut queue = VecDeque::from([s]);
        label[s] = count;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if label[w] == usize::MAX {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    let mut out = vec![Vec::new(); count];
    for c in cells {
        let low: Cell = c.iter().map(|e| vec![e[0]]).collect();
        out[label[index[&low]]].push(c.clone());
    }
    out
}

/// Betti numbers over GF(2); equal to the rational ones when there is no torsion.
pub fn betti_mod2(cells: &[Cell]) -> Vec<usize> {
    let f = f_vector(cells);
    let mut by_dim: Vec<Vec<&Cell>> = vec![Vec::new(); f.len()];
    for c in cells {
        by_dim[dim(c)].push(c);
    }
    let mut ranks = vec![0usize; f.len() + 1];
    for d in 1..f.len() {
        let rows: HashMap<&Cell, usize> = by_dim[d - 1].iter().enumerate().map(|(k, &c)| (c, k)).collect();
        let cols: Vec<HashSet<usize>> = by_dim[d]
            .iter()
            .map(|c| facets(c).iter().map(|x| rows[x]).collect())
            .collect();
        ranks[d] = rank_gf2(cols);
    }
    let mut b: Vec<usize> = (0..f.len()).map(|d| f[d] - ranks[d] - ranks[d + 1]).collect();
    while b.last() == Some(&0) {
        b.pop();
    }
    b
}

fn rank_gf2(mut cols: Vec<HashSet<usize>>) -> usize {
    let mut pivot_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rank = 0;
    for j in 0..cols.len() {
        loop {
            let Some(&low) = cols[j].iter().max() else { break };
            match pivot_of.get(&low) {
                Some(&p) => {
                    let other = cols[p].clone();
                    for x in other {
                        if !cols[j].remove(&x) {
                            cols[j].insert(x);
                        }
                    }
                }
                None => {
                    pivot_of.insert(low, j);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Rank of an integer matrix over the rationals (fraction-free elimination).
pub fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let (n, m) = (a.len(), a.first().map_or(0, Vec::len));
    let mut rank = 0;
    for j in 0..m {
        let Some(p) = (rank..n).find(|&i| a[i][j] != 0) else { continue };
        a.swap(rank, p);
        for i in 0..n {
            if i != rank && a[i][j] != 0 {
                let (x, y) = (a[rank][j], a[i][j]);
                for k in 0..m {
                    a[i][k] = a[i][k] * x - a[rank][k] * y;
                }
                let g = a[i].iter().fold(0i128, |g, &v| gcd(g, v.abs()));
                if g > 1 {
                    a[i].iter_mut().for_each(|v| *v /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by Bareiss elimination.
pub fn det(rows: &[Vec<i64>]) -> i128 {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else { return 0 };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
