use super::MatchingVector;
use crate::game::GameInstance;
use crate::numeric::Rational;

/// Structure of a fractional matching on a general graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfIntegralReport {
    /// Every entry is 0, 1/2 or 1.
    pub values_ok: bool,
    /// Edges at value 1, which must form a matching.
    pub ones: Vec<usize>,
    /// Components of the value-1/2 edges, as vertex sequences starting at the
    /// lowest vertex index.
    pub half_cycles: Vec<Vec<usize>>,
    /// Every half component is an odd cycle.
    pub cycles_odd: bool,
    /// Ones and half cycles share no vertex and the ones are pairwise disjoint.
    pub disjoint: bool,
    pub is_half_integral: bool,
}

pub fn check_half_integral(g: &GameInstance, x: &MatchingVector) -> HalfIntegralReport {
    let half = Rational::new(1, 2);
    let values_ok = x.multiplicities.iter().all(|v| v.is_zero() || *v == half || *v == Rational::one());
    let ones: Vec<usize> = x.support().filter(|&e| x.multiplicities[e] == Rational::one()).collect();
    let halves: Vec<usize> = x.support().filter(|&e| x.multiplicities[e] == half).collect();

    let n = g.vertex_count();
    let mut one_degree = vec![0usize; n];
    for &e in &ones {
        for q in g.edges()[e].ends {
            one_degree[q] += 1;
        }
    }
    let mut half_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &e in &halves {
        let [a, b] = g.edges()[e].ends;
        half_adj[a].push(b);
        half_adj[b].push(a);
    }
    let mut disjoint = one_degree.iter().all(|&d| d <= 1);
    disjoint &= (0..n).all(|q| one_degree[q] == 0 || half_adj[q].is_empty());

    let mut cycles_odd = true;
    let mut half_cycles = Vec::new();
    let mut seen = vec![false; n];
    for start in 0..n {
        if seen[start] || half_adj[start].is_empty() {
            continue;
        }
        // collect the component, then walk it if it is a cycle
        let mut component = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < component.len() {
            for &w in &half_adj[component[k]] {
                if !seen[w] {
                    seen[w] = true;
                    component.push(w);
                }
            }
            k += 1;
        }
        let is_cycle = component.iter().all(|&q| half_adj[q].len() == 2);
        if !is_cycle {
            cycles_odd = false;
            component.sort_unstable();
            half_cycles.push(component);
            continue;
        }
        let mut walk = vec![start];
        let (mut prev, mut cur) = (start, half_adj[start][0].min(half_adj[start][1]));
        while cur != start {
            walk.push(cur);
            let next = if half_adj[cur][0] == prev { half_adj[cur][1] } else { half_adj[cur][0] };
            prev = cur;
            cur = next;
        }
        cycles_odd &= walk.len() % 2 == 1;
        half_cycles.push(walk);
    }

    HalfIntegralReport {
        is_half_integral: values_ok && cycles_odd && disjoint,
        values_ok,
        ones,
        half_cycles,
        cycles_odd,
        disjoint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{GameBuilder, Variant};
    use crate::numeric::rat;

    fn triangle_plus_edge() -> GameInstance {
        GameBuilder::new(Variant::GeneralMatching)
            .vertices(["a", "b", "c", "d", "e"])
            .edge("a", "b", rat("1"))
            .edge("b", "c", rat("1"))
            .edge("c", "a", rat("1"))
            .edge("d", "e", rat("1"))
            .build()
            .unwrap()
    }

    #[test]
    fn triangle_halves_and_a_one() {
        let g = triangle_plus_edge();
        let x = MatchingVector::new(&g, vec![rat("1/2"), rat("1/2"), rat("1/2"), rat("1")]);
        let r = check_half_integral(&g, &x);
        assert!(r.is_half_integral);
        assert_eq!(r.ones, vec![3]);
        assert_eq!(r.half_cycles, vec![vec![0, 1, 2]]);
    }

    #[test]
    fn rejects_bad_values_and_paths() {
        let g = triangle_plus_edge();
        let x = MatchingVector::new(&g, vec![rat("1/3"), rat("0"), rat("0"), rat("0")]);
        assert!(!check_half_integral(&g, &x).values_ok);
        let x = MatchingVector::new(&g, vec![rat("1/2"), rat("1/2"), rat("0"), rat("0")]);
        let r = check_half_integral(&g, &x);
        assert!(r.values_ok && !r.cycles_odd && !r.is_half_integral);
    }

    #[test]
    fn rejects_overlapping_ones() {
        let g = triangle_plus_edge();
        let x = MatchingVector::new(&g, vec![rat("1"), rat("1"), rat("0"), rat("0")]);
        assert!(!check_half_integral(&g, &x).disjoint);
    }
}
