//! Partial rotation maps: every end is present from the start, ends not
//! yet matched act as pendant stubs. Joining two stubs keeps the map
//! planar exactly when they share a face or sit in different components.

use crate::graph::PatchArc;

const OPEN: i32 = -1;
const GHOST: i32 = -2;

#[derive(Debug, Clone)]
pub(crate) struct Partial {
    pub p: u32,
    vertex: Vec<usize>,
    key: Vec<u32>,
    succ: Vec<usize>,
    partner: Vec<i32>,
    nverts: usize,
    ascending: Vec<bool>,
}

impl Partial {
    /// `ascending.len()` vertices with ends keyed `1..=p`; dart
    /// `v * p + (k - 1)` is the end keyed `k` at `v`.
    pub fn new(ascending: Vec<bool>, p: u32) -> Self {
        let pu = p as usize;
        let n = ascending.len() * pu;
        let mut succ = vec![0; n];
        for (v, &asc) in ascending.iter().enumerate() {
            for l in 0..pu {
                let next = if asc { (l + 1) % pu } else { (l + pu - 1) % pu };
                succ[v * pu + l] = v * pu + next;
            }
        }
        Partial {
            p,
            vertex: (0..n).map(|d| d / pu).collect(),
            key: (0..n).map(|d| (d % pu) as u32 + 1).collect(),
            succ,
            partner: vec![OPEN; n],
            nverts: ascending.len(),
            ascending,
        }
    }

    pub fn darts(&self) -> usize {
        self.partner.len()
    }

    pub fn vertex(&self, d: usize) -> usize {
        self.vertex[d]
    }

    pub fn is_open(&self, d: usize) -> bool {
        self.partner[d] == OPEN
    }

    pub fn first_open(&self) -> Option<usize> {
        self.partner.iter().position(|&x| x == OPEN)
    }

    pub fn partner(&self, d: usize) -> Option<usize> {
        usize::try_from(self.partner[d]).ok()
    }

    pub fn set_ghost(&mut self, d: usize) {
        self.partner[d] = GHOST;
    }

    pub fn reopen(&mut self, d: usize) {
        self.partner[d] = OPEN;
    }

    pub fn join(&mut self, d: usize, e: usize) {
        self.partner[d] = e as i32;
        self.partner[e] = d as i32;
    }

    pub fn unjoin(&mut self, d: usize, e: usize) {
        self.partner[d] = OPEN;
        self.partner[e] = OPEN;
    }

    fn next(&self, d: usize) -> usize {
        match self.partner[d] {
            x if x >= 0 => self.succ[x as usize],
            _ => self.succ[d],
        }
    }

    /// Face id of every dart; stubs lie in the face they leave into.
    pub fn faces(&self) -> Vec<usize> {
        let n = self.darts();
        let mut face = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if face[s] != usize::MAX {
                continue;
            }
            let mut d = s;
            while face[d] == usize::MAX {
                face[d] = count;
                d = self.next(d);
            }
            count += 1;
        }
        face
    }

    /// Component id of every vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut root: Vec<usize> = (0..self.nverts).collect();
        fn find(root: &mut [usize], mut x: usize) -> usize {
            while root[x] != x {
                root[x] = root[root[x]];
                x = root[x];
            }
            x
        }
        for d in 0..self.darts() {
            if self.partner[d] > d as i32 {
                let a = find(&mut root, self.vertex[d]);
                let b = find(&mut root, self.vertex[self.partner[d] as usize]);
                root[a.max(b)] = a.min(b);
            }
        }
        let mut label = vec![usize::MAX; self.nverts];
        let mut next = 0;
        (0..self.nverts)
            .map(|v| {
                let r = find(&mut root, v);
                if label[r] == usize::MAX {
                    label[r] = next;
                    next += 1;
                }
                label[r]
            })
            .collect()
    }

    /// Ghosts of one component all lie in one face.
    pub fn ghosts_cofacial(&self, faces: &[usize], comps: &[usize]) -> bool {
        let mut seen: Vec<Option<usize>> = vec![None; self.nverts];
        for d in 0..self.darts() {
            if self.partner[d] == GHOST {
                let c = comps[self.vertex[d]];
                match seen[c] {
                    None => seen[c] = Some(faces[d]),
                    Some(f) if f != faces[d] => return false,
                    Some(_) => {}
                }
            }
        }
        true
    }

    /// Faces with no stubs left, as `(darts, common corner pair)`; the
    /// pair is `Some(a)` when every corner is `(a, a+1)` and all vertices
    /// on the face have one sign.
    pub fn closed_faces(&self, faces: &[usize]) -> Vec<(usize, Option<u32>)> {
        let nf = faces.iter().copied().max().map_or(0, |m| m + 1);
        let mut open = vec![false; nf];
        let mut len = vec![0usize; nf];
        let mut pair: Vec<Option<Option<u32>>> = vec![None; nf];
        let mut orient: Vec<Option<bool>> = vec![None; nf];
        for (d, &f) in faces.iter().enumerate().take(self.darts()) {
            if self.partner[d] < 0 {
                open[f] = true;
                continue;
            }
            len[f] += 1;
            // corner entered at partner(d), left along next(d)
            let a = self.key[self.partner[d] as usize];
            let b = self.key[self.next(d)];
            let asc = self.ascending[self.vertex[d]];
            let mixed = *orient[f].get_or_insert(asc) != asc;
            let c = crate::graph::consecutive_pair(a, b, self.p).filter(|_| !mixed);
            pair[f] = Some(match pair[f] {
                None => c,
                Some(prev) if prev == c => c,
                Some(_) => None,
            });
        }
        (0..nf)
            .filter(|&f| !open[f] && len[f] > 0)
            .map(|f| (len[f], pair[f].flatten()))
            .collect()
    }

    /// A component with no open stubs while other vertices remain outside
    /// it can never become connected to them.
    pub fn stranded(&self, comps: &[usize]) -> bool {
        if comps.iter().all(|&c| c == 0) {
            return false;
        }
        let ncomp = comps.iter().copied().max().unwrap() + 1;
        let mut open = vec![false; ncomp];
        for d in 0..self.darts() {
            if self.partner[d] == OPEN {
                open[comps[self.vertex[d]]] = true;
            }
        }
        open.contains(&false)
    }

    /// No end of vertex `v` is matched or ghosted yet.
    pub fn untouched(&self, v: usize) -> bool {
        let pu = self.p as usize;
        self.partner[v * pu..(v + 1) * pu]
            .iter()
            .all(|&x| x == OPEN)
    }

    /// Some face is bounded by a single edge side and nothing else.
    pub fn monogon(&self) -> bool {
        (0..self.darts()).any(|d| self.partner[d] >= 0 && self.next(d) == d)
    }

    pub fn patch_arcs(&self) -> Vec<PatchArc> {
        let mut out = Vec::new();
        for d in 0..self.darts() {
            let here = (self.vertex[d], self.key[d]);
            match self.partner[d] {
                GHOST => out.push(PatchArc::Ghost {
                    vertex: here.0,
                    label: here.1,
                }),
                x if x > d as i32 => {
                    let e = x as usize;
                    out.push(PatchArc::Edge([here, (self.vertex[e], self.key[e])]));
                }
                _ => {}
            }
        }
        out
    }
}
