//! Strong components and the arcs that lie on no cycle.

use serde::{Deserialize, Serialize};

use crate::graph::Digraph;

/// Partition of the vertices into strong components.
///
/// `components` is in reverse topological order of the condensation: a
/// component only has arcs into components listed before it. Vertex lists are
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SccPartition {
    pub component_of: Vec<usize>,
    pub components: Vec<Vec<usize>>,
}

impl SccPartition {
    pub fn count(&self) -> usize {
        self.components.len()
    }

    pub fn same_component(&self, u: usize, v: usize) -> bool {
        self.component_of[u] == self.component_of[v]
    }

    /// Induced sub-digraphs, loops preserved, in component order.
    pub fn subgraphs(&self, d: &Digraph) -> Vec<Digraph> {
        self.components.iter().map(|c| d.induced(c)).collect()
    }
}

/// Tarjan's algorithm, iterative so deep paths cannot overflow the stack.
pub fn strong_components(d: &Digraph) -> SccPartition {
    const UNVISITED: usize = usize::MAX;
    let n = d.order();
    let succ: Vec<Vec<usize>> = (0..n).map(|v| d.out_neighbors(v).collect()).collect();

    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut components = Vec::new();
    // (vertex, position of the next successor to visit)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        while let Some(&(v, pos)) = call.last() {
            if pos == 0 && index[v] == UNVISITED {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = succ[v].get(pos) {
                call.last_mut().expect("non-empty").1 += 1;
                if index[w] == UNVISITED {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
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

    let mut component_of = vec![0; n];
    for (c, verts) in components.iter().enumerate() {
        for &v in verts {
            component_of[v] = c;
        }
    }
    SccPartition { component_of, components }
}

/// Arcs joining different strong components. An arc inside a component is
/// always on a cycle and loops are 1-cycles, so these are exactly the arcs
/// on no cycle.
pub fn non_cycle_arcs(d: &Digraph) -> Vec<(usize, usize)> {
    let scc = strong_components(d);
    d.arcs().iter().copied().filter(|&(u, v)| !scc.same_component(u, v)).collect()
}

/// Removes every arc that lies on no cycle. The characteristic polynomial is
/// unchanged.
pub fn prune_non_cycle_arcs(d: &Digraph) -> Digraph {
    let scc = strong_components(d);
    d.retain_arcs(|u, v| scc.same_component(u, v))
}

pub fn is_disjoint_union_of_components(d: &Digraph) -> bool {
    non_cycle_arcs(d).is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn two_component() -> Digraph {
        let k2p = Digraph::new(2, &[(0, 1), (1, 0)], &[0]).unwrap();
        let c3 = Digraph::new(3, &[(0, 2), (2, 1), (1, 0)], &[0, 2]).unwrap();
        Digraph::disjoint_union(&[k2p, c3]).unwrap()
    }

    fn path3() -> Digraph {
        Digraph::new(3, &[(0, 1), (1, 2)], &[]).unwrap()
    }

    #[test]
    fn component_examples() {
        let scc = strong_components(&two_component());
        let mut sizes: Vec<_> = scc.components.iter().map(Vec::len).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 3]);

        let k4 = generate(&Family::Complete { n: 4, loops: vec![] }).unwrap();
        assert_eq!(strong_components(&k4).count(), 1);

        let scc = strong_components(&path3());
        assert_eq!(scc.count(), 3);
        // Sinks first.
        assert_eq!(scc.components, vec![vec![2], vec![1], vec![0]]);
    }

    #[test]
    fn reverse_topological_order() {
        let d = Digraph::new(5, &[(0, 1), (1, 0), (1, 2), (2, 3), (3, 2), (4, 0)], &[3]).unwrap();
        let scc = strong_components(&d);
        for &(u, v) in d.arcs() {
            assert!(scc.component_of[u] >= scc.component_of[v], "arc {u}->{v}");
        }
    }

    #[test]
    fn non_cycle_arc_examples() {
        assert!(non_cycle_arcs(&two_component()).is_empty());
        assert_eq!(non_cycle_arcs(&path3()), vec![(0, 1), (1, 2)]);
        let d = Digraph::new(3, &[(0, 1), (1, 0), (1, 2)], &[]).unwrap();
        assert_eq!(non_cycle_arcs(&d), vec![(1, 2)]);
    }

    #[test]
    fn prune_examples() {
        let d = Digraph::new(3, &[(0, 1), (1, 2)], &[1]).unwrap();
        assert_eq!(prune_non_cycle_arcs(&d), Digraph::new(3, &[], &[1]).unwrap());
        let k3 = generate(&Family::Complete { n: 3, loops: vec![] }).unwrap();
        assert_eq!(prune_non_cycle_arcs(&k3), k3);
        let d = Digraph::new(3, &[(0, 1), (1, 0), (1, 2)], &[]).unwrap();
        assert_eq!(prune_non_cycle_arcs(&d), Digraph::new(3, &[(0, 1), (1, 0)], &[]).unwrap());
    }

    #[test]
    fn disjoint_union_examples() {
        assert!(is_disjoint_union_of_components(&two_component()));
        assert!(!is_disjoint_union_of_components(&path3()));
        let c5 = generate(&Family::DirectedCycle { n: 5, loops: vec![1] }).unwrap();
        assert!(is_disjoint_union_of_components(&c5));
    }

    #[test]
    fn component_sums() {
        let d = two_component();
        let scc = strong_components(&d);
        let parts = scc.subgraphs(&d);
        assert_eq!(parts.iter().map(Digraph::order).sum::<usize>(), 5);
        assert_eq!(parts.iter().map(Digraph::loop_count).sum::<usize>(), 3);
    }

    #[test]
    fn long_path_does_not_overflow() {
        let n = 3_000;
        let arcs: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let d = Digraph::new(n, &arcs, &[]).unwrap();
        assert_eq!(strong_components(&d).count(), n);
    }
}
