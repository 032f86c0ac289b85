//! Exact maximum clique by branch and bound with greedy colouring bounds
//! (Tomita-style MCQ on bitsets).

use super::Graph;

pub(super) fn clique_number(g: &Graph) -> usize {
    let all = if g.order() == 64 {
        u64::MAX
    } else {
        (1u64 << g.order()) - 1
    };
    let mut best = 0;
    expand(g, all, 0, &mut best);
    best
}

/// Greedy sequential colouring of `cand`. Returns vertices in colour order
/// together with the colour (1-based) of each, non-decreasing.
fn colour_sort(g: &Graph, cand: u64) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.count_ones() as usize);
    let mut colours = Vec::with_capacity(order.capacity());
    let mut uncoloured = cand;
    let mut colour = 0;
    while uncoloured != 0 {
        colour += 1;
        let mut q = uncoloured;
        while q != 0 {
            let v = q.trailing_zeros() as usize;
            q &= !(1u64 << v);
            q &= !g.neighbors(v);
            uncoloured &= !(1u64 << v);
            order.push(v);
            colours.push(colour);
        }
    }
    (order, colours)
}

fn expand(g: &Graph, mut cand: u64, size: usize, best: &mut usize) {
    let (order, colours) = colour_sort(g, cand);
    for i in (0..order.len()).rev() {
        // a clique inside the remaining candidates uses at most colours[i] vertices
        if size + colours[i] <= *best {
            return;
        }
        let v = order[i];
        let next = cand & g.neighbors(v);
        if next == 0 {
            *best = (*best).max(size + 1);
        } else {
            expand(g, next, size + 1, best);
        }
        cand &= !(1u64 << v);
    }
}
