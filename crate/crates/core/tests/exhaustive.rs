//! Every balanced graph with four vertices per side and A-degrees at most 2.

use bihole::exact::brute_force_oracle;
use bihole::generate::cycle;
use bihole::BipartiteGraph;

/// Neighbourhoods of size at most 2 in a 4-element side.
fn neighbourhoods() -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for b in 0..4 {
        out.push(vec![b]);
        for c in b + 1..4 {
            out.push(vec![b, c]);
        }
    }
    out
}

#[test]
fn minimum_order_is_one_and_cycle_attains_it() {
    let choices = neighbourhoods();
    assert_eq!(choices.len(), 11);
    let mut minimum = usize::MAX;
    let mut minimizers = Vec::new();
    let mut count = 0;
    for code in 0..11usize.pow(4) {
        let mut edges = Vec::new();
        let mut rest = code;
        for a in 0..4 {
            edges.extend(choices[rest % 11].iter().map(|&b| (a, b)));
            rest /= 11;
        }
        let g = BipartiteGraph::new(4, 4, edges).unwrap();
        let order = brute_force_oracle(&g).unwrap().order;
        count += 1;
        if order < minimum {
            minimum = order;
            minimizers.clear();
        }
        if order == minimum {
            minimizers.push(g);
        }
    }
    assert_eq!(count, 14641);
    assert_eq!(minimum, 1);
    let c8 = cycle(4);
    assert!(minimizers.contains(&c8));
}
