use super::ColoredGraph;

/// Ranks of `H_0` and `H_1` over F2, leaves ignored.
///
/// `H_1` rank is `#E - rank(d)` and `H_0` rank is `#V - rank(d)`, where `d`
/// is the F2 incidence matrix; loops contribute zero columns.
pub fn homology_ranks_f2(g: &ColoredGraph) -> (usize, usize) {
    let nv = g.vertices.len();
    let words = nv.div_ceil(64).max(1);
    let mut columns: Vec<Vec<u64>> = g
        .edges
        .iter()
        .map(|e| {
            let mut col = vec![0u64; words];
            for end in &e.ends {
                if let Some(i) = g.vertex_index(end) {
                    col[i / 64] ^= 1 << (i % 64);
                }
            }
            col
        })
        .collect();
    let rank = f2_rank(&mut columns, nv);
    (nv - rank, g.edges.len() - rank)
}

fn f2_rank(columns: &mut [Vec<u64>], nbits: usize) -> usize {
    let mut rank = 0;
    for bit in 0..nbits {
        let (w, m) = (bit / 64, 1u64 << (bit % 64));
        let Some(p) = (rank..columns.len()).find(|&c| columns[c][w] & m != 0) else {
            continue;
        };
        columns.swap(rank, p);
        let pivot = columns[rank].clone();
        for c in columns.iter_mut().skip(rank + 1) {
            if c[w] & m != 0 {
                for (x, y) in c.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}
