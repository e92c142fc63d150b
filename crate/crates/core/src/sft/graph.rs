use super::TransitionMatrix;

/// Strongly connected components of the transition digraph, in reverse
/// topological order (Tarjan). Each component's symbols are sorted.
pub fn strongly_connected_components(a: &TransitionMatrix) -> Vec<Vec<usize>> {
    let n = a.order();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0usize;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, next successor column to inspect)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut col)) = call.last_mut() {
            let mut descended = false;
            while *col < n {
                let w = *col;
                *col += 1;
                if !a.get(v, w) {
                    continue;
                }
                if index[w] == usize::MAX {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                    descended = true;
                    break;
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            }
            if descended {
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                components.push(comp);
            }
        }
    }
    components
}

/// A component carries dynamics iff it has at least one internal edge
/// (a singleton needs a self-loop).
pub fn has_internal_edge(a: &TransitionMatrix, comp: &[usize]) -> bool {
    comp.iter().any(|&i| comp.iter().any(|&j| a.get(i, j)))
}

/// True iff the transition digraph is strongly connected.
pub fn is_irreducible(a: &TransitionMatrix) -> bool {
    let n = a.order();
    if n == 1 {
        return a.get(0, 0);
    }
    reaches_all(a, false) && reaches_all(a, true)
}

// Breadth-first reachability from symbol 0, forwards or along reversed edges.
fn reaches_all(a: &TransitionMatrix, reversed: bool) -> bool {
    let n = a.order();
    let mut seen = vec![false; n];
    let mut queue = vec![0usize];
    seen[0] = true;
    while let Some(v) = queue.pop() {
        for w in 0..n {
            let edge = if reversed { a.get(w, v) } else { a.get(v, w) };
            if edge && !seen[w] {
                seen[w] = true;
                queue.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Definition via boolean matrix powers: for every (i, j) some power
    // A^k, 1 <= k <= n, has a positive (i, j) entry.
    fn irreducible_by_powers(a: &TransitionMatrix) -> bool {
        let n = a.order();
        let mut power = a.clone();
        let mut reach = a.clone();
        for _ in 1..n {
            let mut next = TransitionMatrix::zeros(n).unwrap();
            for i in 0..n {
                for j in 0..n {
                    let v = (0..n).any(|k| power.get(i, k) && a.get(k, j));
                    next.set(i, j, v);
                }
            }
            power = next;
            for i in 0..n {
                for j in 0..n {
                    if power.get(i, j) {
                        reach.set(i, j, true);
                    }
                }
            }
        }
        (0..n).all(|i| (0..n).all(|j| reach.get(i, j)))
    }

    fn matrix_from_bits(n: usize, bits: u64) -> TransitionMatrix {
        let mut m = TransitionMatrix::zeros(n).unwrap();
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, (bits >> (i * n + j)) & 1 == 1);
            }
        }
        m
    }

    #[test]
    fn trivial_cases() {
        assert!(is_irreducible(
            &TransitionMatrix::from_rows(&[[1u8]]).unwrap()
        ));
        assert!(!is_irreducible(
            &TransitionMatrix::from_rows(&[[0u8]]).unwrap()
        ));
        assert!(!is_irreducible(
            &TransitionMatrix::from_rows(&[[0u8, 1], [0, 0]]).unwrap()
        ));
    }

    #[test]
    fn exhaustive_up_to_order_four() {
        for n in 1..=4usize {
            for bits in 0..(1u64 << (n * n)) {
                let m = matrix_from_bits(n, bits);
                assert_eq!(is_irreducible(&m), irreducible_by_powers(&m), "{m:?}");
            }
        }
    }

    #[test]
    fn sampled_orders_four_to_seven() {
        // xorshift keeps this free of dev-dependency seeding details
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in 4..=7usize {
            for _ in 0..3000 {
                let mut m = TransitionMatrix::zeros(n).unwrap();
                // sparse-ish so both outcomes appear
                for i in 0..n {
                    for j in 0..n {
                        m.set(i, j, next() % 100 < 30);
                    }
                }
                assert_eq!(is_irreducible(&m), irreducible_by_powers(&m), "{m:?}");
            }
        }
    }

    #[test]
    fn components_of_block_matrix() {
        let m = TransitionMatrix::from_rows(&[
            [1u8, 1, 0, 0],
            [1, 1, 1, 0],
            [0, 0, 1, 0],
            [0, 0, 1, 0],
        ])
        .unwrap();
        let mut comps = strongly_connected_components(&m);
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1], vec![2], vec![3]]);
        assert!(has_internal_edge(&m, &[2]));
        assert!(!has_internal_edge(&m, &[3]));
    }
}
