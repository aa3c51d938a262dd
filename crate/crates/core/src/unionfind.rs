/// Union by size without path compression, so every union can be undone.
///
/// Branch-and-bound search takes a [`UnionFind::snapshot`] before trying an
/// edge and calls [`UnionFind::rollback`] when the branch returns.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    sets: usize,
    // (absorbed root, surviving root) per successful union
    history: Vec<(usize, usize)>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            sets: n,
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` if `a` and `b` were already connected.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.sets -= 1;
        self.history.push((rb, ra));
        true
    }

    pub fn same(&self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }

    pub fn snapshot(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, snapshot: usize) {
        while self.history.len() > snapshot {
            let (child, root) = self.history.pop().unwrap();
            self.parent[child] = child;
            self.size[root] -= self.size[child];
            self.sets += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_and_rollback() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        let snap = uf.snapshot();
        assert!(uf.union(1, 2));
        assert!(uf.union(3, 4));
        assert!(!uf.union(0, 2));
        assert_eq!(uf.set_count(), 2);
        uf.rollback(snap);
        assert_eq!(uf.set_count(), 4);
        assert!(uf.same(0, 1));
        assert!(!uf.same(1, 2));
        assert!(!uf.same(3, 4));
    }
}
