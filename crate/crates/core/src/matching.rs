//! Bipartite matching (Hopcroft-Karp) and Hall-violator extraction along
//! alternating paths.

use std::collections::VecDeque;

const FREE: usize = usize::MAX;

/// Bipartite graph with `left.len()` left vertices; `left[i]` lists the right
/// neighbors of left vertex `i` in the order they should be tried.
#[derive(Debug, Clone)]
pub struct Bipartite {
    pub left: Vec<Vec<usize>>,
    pub right_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Right partner of each left vertex.
    pub left_to_right: Vec<Option<usize>>,
    /// Left partner of each right vertex.
    pub right_to_left: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.left_to_right.iter().flatten().count()
    }

    pub fn is_left_perfect(&self) -> bool {
        self.left_to_right.iter().all(Option::is_some)
    }
}

impl Bipartite {
    pub fn new(left: Vec<Vec<usize>>, right_len: usize) -> Self {
        Self { left, right_len }
    }

    /// Maximum matching. Deterministic for a fixed adjacency order.
    pub fn maximum_matching(&self) -> Matching {
        let nl = self.left.len();
        let mut ml = vec![FREE; nl];
        let mut mr = vec![FREE; self.right_len];
        let mut dist = vec![0usize; nl];
        loop {
            // BFS layering from free left vertices
            let mut queue = VecDeque::new();
            for l in 0..nl {
                if ml[l] == FREE {
                    dist[l] = 0;
                    queue.push_back(l);
                } else {
                    dist[l] = usize::MAX;
                }
            }
            let mut found = false;
            while let Some(l) = queue.pop_front() {
                for &r in &self.left[l] {
                    let next = mr[r];
                    if next == FREE {
                        found = true;
                    } else if dist[next] == usize::MAX {
                        dist[next] = dist[l] + 1;
                        queue.push_back(next);
                    }
                }
            }
            if !found {
                break;
            }
            let mut progressed = false;
            for l in 0..nl {
                if ml[l] == FREE && self.augment(l, &mut ml, &mut mr, &mut dist) {
                    progressed = true;
                }
            }
            if !progressed {
                break;
            }
        }
        Matching {
            left_to_right: ml.iter().map(|&r| (r != FREE).then_some(r)).collect(),
            right_to_left: mr.iter().map(|&l| (l != FREE).then_some(l)).collect(),
        }
    }

    fn augment(&self, l: usize, ml: &mut [usize], mr: &mut [usize], dist: &mut [usize]) -> bool {
        for &r in &self.left[l] {
            let next = mr[r];
            if next == FREE || (dist[next] == dist[l] + 1 && self.augment(next, ml, mr, dist)) {
                ml[l] = r;
                mr[r] = l;
                return true;
            }
        }
        dist[l] = usize::MAX;
        false
    }

    /// Given a maximum matching that leaves `start` (a left vertex) unmatched,
    /// returns the left vertices reachable from `start` by alternating paths
    /// (including `start`) and their right neighborhood. The neighborhood is
    /// one smaller than the left set, witnessing a Hall violation.
    pub fn hall_violator(&self, matching: &Matching, start: usize) -> (Vec<usize>, Vec<usize>) {
        let mut seen_left = vec![false; self.left.len()];
        let mut seen_right = vec![false; self.right_len];
        seen_left[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(l) = queue.pop_front() {
            for &r in &self.left[l] {
                if seen_right[r] {
                    continue;
                }
                seen_right[r] = true;
                let partner = matching.right_to_left[r]
                    .expect("a free right vertex on an alternating path contradicts maximality");
                if !seen_left[partner] {
                    seen_left[partner] = true;
                    queue.push_back(partner);
                }
            }
        }
        (
            (0..self.left.len()).filter(|&l| seen_left[l]).collect(),
            (0..self.right_len).filter(|&r| seen_right[r]).collect(),
        )
    }
}
