//! Union-find over `0..n`.

#[derive(Clone, Copy, Debug)]
struct Node {
    parent: usize,
    size: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct DisjointSets {
    nodes: Vec<Node>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets { nodes: (0..n).map(|i| Node { parent: i, size: 1 }).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.nodes[root].parent != root {
            root = self.nodes[root].parent;
        }
        while self.nodes[x].parent != root {
            let next = self.nodes[x].parent;
            self.nodes[x].parent = root;
            x = next;
        }
        root
    }

    /// Returns true if `a` and `b` were in different sets.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.nodes[a].size < self.nodes[b].size {
            std::mem::swap(&mut a, &mut b);
        }
        self.nodes[b].parent = a;
        self.nodes[a].size += self.nodes[b].size;
        true
    }

    /// Blocks sorted by smallest member, members ascending.
    pub fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            let r = self.find(i);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(i);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merges() {
        let mut d = DisjointSets::new(5);
        assert!(d.union(0, 3));
        assert!(d.union(4, 3));
        assert!(!d.union(0, 4));
        assert_eq!(d.blocks(), vec![vec![0, 3, 4], vec![1], vec![2]]);
    }
}
