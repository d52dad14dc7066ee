//! PQ-trees for the consecutive-ones property (Booth-Lueker templates).
//!
//! A PQ-tree over columns `0..k` represents a set of column orderings closed
//! under the tree operations: children of a P-node permute freely, children
//! of a Q-node only reverse. [`PqTree::reduce`] restricts the represented set
//! to orderings placing a given column set consecutively, failing exactly
//! when that leaves no ordering. [`PqTree::frontier`] returns one represented
//! ordering.
//!
//! Per-reduction state is generation-stamped instead of being reset between
//! reductions, full children are detached into a ring as they report (so
//! bundling them is O(1)), empty children are never walked (a node being
//! restructured hands its attachment to a fresh shell and stays behind as
//! the holder of its empty children), and sibling links carry no global
//! orientation (walks are relative), which makes Q-chain reversal free.
//! Work per reduction is proportional to the pertinent subtree.

const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    Leaf,
    P,
    Q,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Label {
    Empty,
    Full,
    Partial,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mark {
    Unmarked,
    Queued,
    Blocked,
    Unblocked,
}

#[derive(Clone)]
struct Node {
    kind: Kind,
    /// Valid for P-children and endmost Q-children; garbage for interior
    /// Q-children except while a reduction has unblocked them.
    parent: u32,
    /// True if this node is attached as the child of a Q-node.
    qchild: bool,
    /// Sibling slots. P-children: circular doubly-linked ring. Q-children:
    /// straight chain, one NIL slot at each chain end. No orientation is
    /// guaranteed; walks step to "the slot that is not where we came from".
    s: [u32; 2],
    /// P: some child (ring entry). Q: one chain end. Leaf: column id.
    child: u32,
    /// Q: the other chain end.
    rchild: u32,
    /// Maintained for P-nodes only.
    child_count: u32,
    // Generation-stamped reduction state.
    stamp: u32,
    label: Label,
    mark: Mark,
    pertinent_children: u32,
    pertinent_leaves: u32,
    processed_children: u32,
    full_head: u32,
    full_count: u32,
    partial_child: [u32; 2],
    partial_count: u32,
    pertinent_entry: u32,
}

impl Node {
    fn blank(kind: Kind) -> Node {
        Node {
            kind,
            parent: NIL,
            qchild: false,
            s: [NIL, NIL],
            child: NIL,
            rchild: NIL,
            child_count: 0,
            stamp: 0,
            label: Label::Empty,
            mark: Mark::Unmarked,
            pertinent_children: 0,
            pertinent_leaves: 0,
            processed_children: 0,
            full_head: NIL,
            full_count: 0,
            partial_child: [NIL, NIL],
            partial_count: 0,
            pertinent_entry: NIL,
        }
    }
}

type Ready = std::collections::VecDeque<u32>;

pub struct PqTree {
    nodes: Vec<Node>,
    free: Vec<u32>,
    root: u32,
    leaf_node: Vec<u32>,
    cols: usize,
    gen: u32,
    /// Set when a failed reduction has left the structure inconsistent.
    poisoned: bool,
}

impl PqTree {
    /// Universal tree: all `cols` columns under one P-node.
    pub fn new(cols: usize) -> PqTree {
        // Node 0 is reserved as the pseudonode for blocked runs.
        let mut t = PqTree {
            nodes: vec![Node::blank(Kind::Q)],
            free: Vec::new(),
            root: NIL,
            leaf_node: Vec::with_capacity(cols),
            cols,
            gen: 0,
            poisoned: false,
        };
        for c in 0..cols {
            let l = t.alloc(Kind::Leaf);
            t.nodes[l as usize].child = c as u32;
            t.leaf_node.push(l);
        }
        match cols {
            0 => {}
            1 => t.root = t.leaf_node[0],
            _ => {
                let root = t.alloc(Kind::P);
                t.root = root;
                for c in 0..cols {
                    t.p_ring_insert(root, t.leaf_node[c]);
                }
            }
        }
        t
    }

    fn alloc(&mut self, kind: Kind) -> u32 {
        if let Some(i) = self.free.pop() {
            self.nodes[i as usize] = Node::blank(kind);
            i
        } else {
            self.nodes.push(Node::blank(kind));
            (self.nodes.len() - 1) as u32
        }
    }

    fn touch(&mut self, x: u32) {
        let gen = self.gen;
        let n = &mut self.nodes[x as usize];
        if n.stamp != gen {
            n.stamp = gen;
            n.label = Label::Empty;
            n.mark = Mark::Unmarked;
            n.pertinent_children = 0;
            n.pertinent_leaves = 0;
            n.processed_children = 0;
            n.full_head = NIL;
            n.full_count = 0;
            n.partial_child = [NIL, NIL];
            n.partial_count = 0;
            n.pertinent_entry = NIL;
        }
    }

    fn label_of(&self, x: u32) -> Label {
        let n = &self.nodes[x as usize];
        if n.stamp == self.gen {
            n.label
        } else {
            Label::Empty
        }
    }

    fn mark_of(&self, x: u32) -> Mark {
        let n = &self.nodes[x as usize];
        if n.stamp == self.gen {
            n.mark
        } else {
            Mark::Unmarked
        }
    }

    fn pertinent(&self, x: u32) -> bool {
        matches!(self.label_of(x), Label::Full | Label::Partial)
    }

    // ----- sibling-slot plumbing -----

    fn slot_replace(&mut self, x: u32, old: u32, new: u32) {
        let n = &mut self.nodes[x as usize];
        if n.s[0] == old {
            n.s[0] = new;
        } else {
            debug_assert_eq!(n.s[1], old);
            n.s[1] = new;
        }
    }

    /// Neighbor of `cur` other than `from` (relative step).
    fn step(&self, from: u32, cur: u32) -> u32 {
        let n = &self.nodes[cur as usize];
        if n.s[0] == from {
            n.s[1]
        } else {
            n.s[0]
        }
    }

    // ----- P-ring operations (circular doubly-linked) -----

    fn p_ring_insert(&mut self, parent: u32, x: u32) {
        let e = self.nodes[parent as usize].child;
        if e == NIL {
            self.nodes[x as usize].s = [x, x];
            self.nodes[parent as usize].child = x;
        } else {
            let f = self.nodes[e as usize].s[1];
            self.slot_replace(e, f, x);
            self.slot_replace(f, e, x);
            self.nodes[x as usize].s = [e, f];
        }
        self.nodes[x as usize].parent = parent;
        self.nodes[x as usize].qchild = false;
        self.nodes[parent as usize].child_count += 1;
    }

    fn p_ring_detach(&mut self, parent: u32, x: u32) {
        let [n0, n1] = self.nodes[x as usize].s;
        if n0 == x {
            // Sole member.
            self.nodes[parent as usize].child = NIL;
        } else {
            self.slot_replace(n0, x, n1);
            self.slot_replace(n1, x, n0);
            if self.nodes[parent as usize].child == x {
                self.nodes[parent as usize].child = n0;
            }
        }
        self.nodes[x as usize].s = [NIL, NIL];
        self.nodes[parent as usize].child_count -= 1;
    }

    /// All members of the ring entered at `entry` (entry included).
    fn p_ring_members(&self, entry: u32) -> Vec<u32> {
        let mut out = vec![entry];
        let mut prev = entry;
        let mut cur = self.nodes[entry as usize].s[1];
        while cur != entry {
            out.push(cur);
            let nx = self.step(prev, cur);
            prev = cur;
            cur = nx;
        }
        out
    }

    // ----- full-ring bookkeeping (detached full children of a P-node) -----

    fn full_ring_push(&mut self, parent: u32, x: u32) {
        let head = self.nodes[parent as usize].full_head;
        if head == NIL {
            self.nodes[x as usize].s = [x, x];
            self.nodes[parent as usize].full_head = x;
        } else {
            let f = self.nodes[head as usize].s[1];
            self.slot_replace(head, f, x);
            self.slot_replace(f, head, x);
            self.nodes[x as usize].s = [head, f];
        }
        self.nodes[parent as usize].full_count += 1;
    }

    /// The full part of a processed P-node as one unattached node: the sole
    /// full child, or a fresh P-node over the detached full ring. NIL when
    /// there are no full children.
    fn full_part(&mut self, x: u32) -> u32 {
        match self.nodes[x as usize].full_count {
            0 => NIL,
            1 => {
                let f = self.nodes[x as usize].full_head;
                self.nodes[x as usize].full_head = NIL;
                self.nodes[x as usize].full_count = 0;
                self.nodes[f as usize].s = [NIL, NIL];
                f
            }
            _ => {
                let p = self.alloc(Kind::P);
                let head = self.nodes[x as usize].full_head;
                let count = self.nodes[x as usize].full_count;
                self.nodes[x as usize].full_head = NIL;
                self.nodes[x as usize].full_count = 0;
                self.nodes[p as usize].child = head;
                self.nodes[p as usize].child_count = count;
                for m in self.p_ring_members(head) {
                    self.nodes[m as usize].parent = p;
                    self.nodes[m as usize].qchild = false;
                }
                self.touch(p);
                self.nodes[p as usize].label = Label::Full;
                p
            }
        }
    }

    /// Consumes what is left of the ring of `x` (the empty children) into one
    /// unattached node: NIL if none, the sole child, or `x` itself keeping
    /// its ring. Frees `x` in the first two cases; the empty children are
    /// never walked.
    fn empty_part(&mut self, x: u32) -> u32 {
        match self.nodes[x as usize].child_count {
            0 => {
                self.free.push(x);
                NIL
            }
            1 => {
                let e = self.nodes[x as usize].child;
                self.p_ring_detach(x, e);
                self.free.push(x);
                e
            }
            _ => x,
        }
    }

    /// Hands the tree attachment of `x` (sibling slots, parent, endmost
    /// bookkeeping) to a fresh Q-shell and returns the shell. `x` is left
    /// unattached with its ring intact.
    fn detach_into_shell(&mut self, x: u32) -> u32 {
        let y = self.alloc(Kind::Q);
        let xs = self.nodes[x as usize].s;
        let parent = self.nodes[x as usize].parent;
        let qchild = self.nodes[x as usize].qchild;
        debug_assert!(parent != NIL, "the tree root is always the pertinent root");
        if xs[0] == x {
            // Sole member of its parent's ring.
            self.nodes[y as usize].s = [y, y];
        } else {
            self.nodes[y as usize].s = xs;
            for nb in xs {
                if nb != NIL {
                    self.slot_replace(nb, x, y);
                }
            }
        }
        self.nodes[y as usize].parent = parent;
        self.nodes[y as usize].qchild = qchild;
        let pn = &mut self.nodes[parent as usize];
        if pn.child == x {
            pn.child = y;
        }
        if pn.kind == Kind::Q && pn.rchild == x {
            pn.rchild = y;
        }
        self.nodes[x as usize].s = [NIL, NIL];
        self.touch(y);
        // The shell reports to x's parent in x's stead.
        self.nodes[y as usize].pertinent_leaves = self.nodes[x as usize].pertinent_leaves;
        y
    }

    // ----- Q-chain operations -----

    /// Chain ends of a partial node, ordered (empty end, full end).
    fn partial_ends(&self, p: u32) -> (u32, u32) {
        debug_assert_eq!(self.nodes[p as usize].kind, Kind::Q);
        let a = self.nodes[p as usize].child;
        let b = self.nodes[p as usize].rchild;
        if self.label_of(a) == Label::Empty {
            debug_assert_ne!(self.label_of(b), Label::Empty);
            (a, b)
        } else {
            debug_assert_eq!(self.label_of(b), Label::Empty);
            (b, a)
        }
    }

    /// Builds a straight chain from `parts` (NIL entries skipped); each part
    /// is a single unattached node or a pre-linked (first, last) run whose
    /// outer slots are NIL. Returns the chain ends.
    fn link_chain(&mut self, parts: &[(u32, u32)]) -> (u32, u32) {
        let live: Vec<(u32, u32)> = parts.iter().copied().filter(|&(a, _)| a != NIL).collect();
        debug_assert!(!live.is_empty());
        for w in live.windows(2) {
            let (_, l) = w[0];
            let (r, _) = w[1];
            self.slot_replace(l, NIL, r);
            self.slot_replace(r, NIL, l);
        }
        (live[0].0, live.last().unwrap().1)
    }

    /// Makes `y` a Q-node over the chain `first..last`. Only the ends are
    /// touched; interior members must already carry `qchild`.
    fn into_q(&mut self, y: u32, first: u32, last: u32) {
        self.nodes[y as usize].kind = Kind::Q;
        self.nodes[y as usize].child = first;
        self.nodes[y as usize].rchild = last;
        self.nodes[y as usize].child_count = 0;
        for e in [first, last] {
            self.nodes[e as usize].parent = y;
            self.nodes[e as usize].qchild = true;
        }
    }

    /// Replaces child `p` of Q-node `parent` by the chain `a..b`, with `a`
    /// taking the side of p's neighbor `toward`. Frees `p`.
    fn q_splice(&mut self, parent: u32, p: u32, a: u32, b: u32, toward: u32) {
        let [n0, n1] = self.nodes[p as usize].s;
        let (na, nb) = if toward == n0 { (n0, n1) } else { (n1, n0) };
        debug_assert_eq!(toward, na);
        for (end, side) in [(a, na), (b, nb)] {
            self.nodes[end as usize].qchild = true;
            if side == NIL {
                // p was endmost; the chain end inherits that.
                self.nodes[end as usize].parent = parent;
                if self.nodes[parent as usize].child == p {
                    self.nodes[parent as usize].child = end;
                } else if self.nodes[parent as usize].rchild == p {
                    self.nodes[parent as usize].rchild = end;
                }
            } else {
                self.slot_replace(end, NIL, side);
                self.slot_replace(side, p, end);
            }
        }
        self.free.push(p);
    }

    // ----- reduction -----

    /// Restricts to orderings where `s` is consecutive. Returns false if no
    /// such ordering exists; the tree must not be used further after that.
    pub fn reduce(&mut self, s: &[u32]) -> bool {
        assert!(!self.poisoned, "reduce on a failed PQ-tree");
        let mut cols: Vec<u32> = s.to_vec();
        cols.sort_unstable();
        cols.dedup();
        assert!(cols.iter().all(|&c| (c as usize) < self.cols));
        if cols.len() <= 1 || cols.len() == self.cols {
            return true;
        }
        self.gen += 1;
        let ok = self.bubble(&cols).is_some() && self.reduce_pass(&cols).is_some();
        if !ok {
            self.poisoned = true;
        }
        ok
    }

    fn bubble(&mut self, cols: &[u32]) -> Option<()> {
        let mut queue: std::collections::VecDeque<u32> = std::collections::VecDeque::new();
        for &c in cols {
            let l = self.leaf_node[c as usize];
            self.touch(l);
            self.nodes[l as usize].mark = Mark::Queued;
            queue.push_back(l);
        }
        let mut block_count: u32 = 0;
        let mut off_the_top: u32 = 0;
        let mut blocked_list: Vec<u32> = Vec::new();
        while queue.len() as u32 + block_count + off_the_top > 1 {
            let x = queue.pop_front()?;
            if x == self.root {
                off_the_top = 1;
                continue;
            }
            let n = &self.nodes[x as usize];
            let endmost = !n.qchild || n.s[0] == NIL || n.s[1] == NIL;
            let parent = if endmost {
                n.parent
            } else {
                // Interior Q-child: adopt a parent from an unblocked sibling.
                let mut found = NIL;
                for sb in n.s {
                    if self.mark_of(sb) == Mark::Unblocked {
                        found = self.nodes[sb as usize].parent;
                        break;
                    }
                }
                found
            };
            if parent == NIL {
                // Blocked; maintain the count of maximal blocked runs.
                let nblocked = self.nodes[x as usize]
                    .s
                    .iter()
                    .filter(|&&sb| self.mark_of(sb) == Mark::Blocked)
                    .count() as u32;
                self.nodes[x as usize].mark = Mark::Blocked;
                blocked_list.push(x);
                block_count = (block_count + 1).checked_sub(nblocked)?;
                continue;
            }
            self.nodes[x as usize].mark = Mark::Unblocked;
            self.nodes[x as usize].parent = parent;
            let absorbed = self.unblock_adjacent(x, parent, &mut block_count);
            self.touch(parent);
            self.nodes[parent as usize].pertinent_children += 1 + absorbed;
            // Queue each node at most once per generation: popped nodes move
            // to Blocked/Unblocked and must not come back.
            if self.mark_of(parent) == Mark::Unmarked {
                self.nodes[parent as usize].mark = Mark::Queued;
                queue.push_back(parent);
            }
        }
        let still_blocked: Vec<u32> = blocked_list
            .into_iter()
            .filter(|&b| self.mark_of(b) == Mark::Blocked)
            .collect();
        if !still_blocked.is_empty() {
            if block_count != 1 {
                return None;
            }
            // One leftover block: hang it under the pseudonode.
            self.touch(0);
            self.nodes[0].kind = Kind::Q;
            self.nodes[0].child = NIL;
            self.nodes[0].rchild = NIL;
            self.nodes[0].parent = NIL;
            self.nodes[0].pertinent_children = still_blocked.len() as u32;
            for b in still_blocked {
                self.nodes[b as usize].parent = 0;
                self.nodes[b as usize].mark = Mark::Unblocked;
            }
        }
        Some(())
    }

    /// Walks both directions from `x`, adopting every consecutive blocked
    /// sibling to `parent`. Returns the number absorbed.
    fn unblock_adjacent(&mut self, x: u32, parent: u32, block_count: &mut u32) -> u32 {
        if !self.nodes[x as usize].qchild {
            return 0;
        }
        let mut absorbed = 0;
        for d in 0..2 {
            let mut prev = x;
            let mut cur = self.nodes[x as usize].s[d];
            let mut any = false;
            while cur != NIL && self.mark_of(cur) == Mark::Blocked {
                self.nodes[cur as usize].mark = Mark::Unblocked;
                self.nodes[cur as usize].parent = parent;
                absorbed += 1;
                any = true;
                let nx = self.step(prev, cur);
                prev = cur;
                cur = nx;
            }
            if any {
                *block_count -= 1;
            }
        }
        absorbed
    }

    fn reduce_pass(&mut self, cols: &[u32]) -> Option<()> {
        let total = cols.len() as u32;
        let mut ready: Ready = Ready::new();
        for &c in cols {
            let l = self.leaf_node[c as usize];
            self.nodes[l as usize].label = Label::Full;
            self.nodes[l as usize].pertinent_leaves = 1;
            self.report(l, &mut ready)?;
        }
        while let Some(x) = ready.pop_front() {
            let is_root = self.nodes[x as usize].pertinent_leaves == total;
            match self.nodes[x as usize].kind {
                Kind::Leaf => unreachable!("leaves report eagerly"),
                Kind::P => self.p_template(x, is_root, &mut ready)?,
                Kind::Q => self.q_template(x, is_root, &mut ready)?,
            }
            if is_root {
                return Some(());
            }
        }
        None
    }

    /// Propagates a labeled node to its parent; enqueues the parent once all
    /// of its pertinent children have reported.
    fn report(&mut self, x: u32, ready: &mut Ready) -> Option<()> {
        let parent = self.nodes[x as usize].parent;
        if parent == NIL {
            return None;
        }
        debug_assert_eq!(self.nodes[parent as usize].stamp, self.gen);
        let leaves = self.nodes[x as usize].pertinent_leaves;
        match self.nodes[x as usize].label {
            Label::Full => {
                if self.nodes[parent as usize].kind == Kind::P {
                    self.p_ring_detach(parent, x);
                    self.full_ring_push(parent, x);
                } else {
                    self.nodes[parent as usize].full_count += 1;
                }
            }
            Label::Partial => {
                let c = self.nodes[parent as usize].partial_count;
                if c == 2 {
                    return None;
                }
                self.nodes[parent as usize].partial_child[c as usize] = x;
                self.nodes[parent as usize].partial_count = c + 1;
            }
            Label::Empty => unreachable!(),
        }
        let pn = &mut self.nodes[parent as usize];
        pn.pertinent_leaves += leaves;
        pn.processed_children += 1;
        if pn.pertinent_entry == NIL {
            pn.pertinent_entry = x;
        }
        if pn.processed_children == pn.pertinent_children {
            ready.push_back(parent);
        }
        Some(())
    }

    fn p_template(&mut self, x: u32, is_root: bool, ready: &mut Ready) -> Option<()> {
        let full = self.nodes[x as usize].full_count;
        let partial = self.nodes[x as usize].partial_count;
        debug_assert!(full > 0 || partial > 0);
        match (partial, is_root) {
            (0, false) => {
                if self.nodes[x as usize].child_count == 0 {
                    // Every child was full: reattach the ring, x is full.
                    let head = self.nodes[x as usize].full_head;
                    self.nodes[x as usize].child = head;
                    self.nodes[x as usize].child_count = full;
                    self.nodes[x as usize].full_head = NIL;
                    self.nodes[x as usize].full_count = 0;
                    self.nodes[x as usize].label = Label::Full;
                    self.report(x, ready)
                } else {
                    // Mixed: a shell takes x's place as a partial Q over
                    // [empties][fulls]; x stays behind holding the empties.
                    let y = self.detach_into_shell(x);
                    let f = self.full_part(x);
                    let e = self.empty_part(x);
                    let (first, last) = self.link_chain(&[(e, e), (f, f)]);
                    self.into_q(y, first, last);
                    self.nodes[y as usize].label = Label::Partial;
                    self.report(y, ready)
                }
            }
            (0, true) => {
                if self.nodes[x as usize].child_count == 0 {
                    let head = self.nodes[x as usize].full_head;
                    self.nodes[x as usize].child = head;
                    self.nodes[x as usize].child_count = full;
                    self.nodes[x as usize].full_head = NIL;
                    self.nodes[x as usize].full_count = 0;
                } else {
                    // Bundle the fulls back in as a single child.
                    let f = self.full_part(x);
                    if f != NIL {
                        self.p_ring_insert(x, f);
                    }
                }
                Some(())
            }
            (1, false) => {
                // Shell becomes a partial Q: [empties][p's chain][fulls].
                let p = self.nodes[x as usize].partial_child[0];
                self.p_ring_detach(x, p);
                let (pe, pf) = self.partial_ends(p);
                let y = self.detach_into_shell(x);
                let f = self.full_part(x);
                let e = self.empty_part(x);
                let (first, last) = self.link_chain(&[(e, e), (pe, pf), (f, f)]);
                self.free.push(p);
                self.into_q(y, first, last);
                self.nodes[y as usize].label = Label::Partial;
                self.report(y, ready)
            }
            (1, true) => {
                // Attach the bundled fulls at the partial child's full end.
                let p = self.nodes[x as usize].partial_child[0];
                let f = self.full_part(x);
                if f != NIL {
                    let (_, pf) = self.partial_ends(p);
                    self.slot_replace(pf, NIL, f);
                    self.nodes[f as usize].s = [pf, NIL];
                    self.nodes[f as usize].parent = p;
                    self.nodes[f as usize].qchild = true;
                    if self.nodes[p as usize].child == pf {
                        self.nodes[p as usize].child = f;
                    } else {
                        debug_assert_eq!(self.nodes[p as usize].rchild, pf);
                        self.nodes[p as usize].rchild = f;
                    }
                }
                self.collapse_single_child(x);
                Some(())
            }
            (2, false) => None,
            (2, true) => {
                // Merge both partial chains around the bundled fulls; p1
                // keeps its ring slot and becomes the merged Q.
                let p1 = self.nodes[x as usize].partial_child[0];
                let p2 = self.nodes[x as usize].partial_child[1];
                self.p_ring_detach(x, p2);
                let f = self.full_part(x);
                let (p1e, p1f) = self.partial_ends(p1);
                let (p2e, p2f) = self.partial_ends(p2);
                if f != NIL {
                    self.nodes[f as usize].qchild = true;
                }
                let (first, last) = self.link_chain(&[(p1e, p1f), (f, f), (p2f, p2e)]);
                self.into_q(p1, first, last);
                self.free.push(p2);
                self.collapse_single_child(x);
                Some(())
            }
            _ => unreachable!(),
        }
    }

    /// A P-node reduced to a single child is replaced by that child in place
    /// (the child's content moves into x's slot, so references to x hold).
    fn collapse_single_child(&mut self, x: u32) {
        if self.nodes[x as usize].kind != Kind::P || self.nodes[x as usize].child_count != 1 {
            return;
        }
        let c = self.nodes[x as usize].child;
        let cn = self.nodes[c as usize].clone();
        let keep_s = self.nodes[x as usize].s;
        let keep_parent = self.nodes[x as usize].parent;
        let keep_qchild = self.nodes[x as usize].qchild;
        self.nodes[x as usize] = cn;
        self.nodes[x as usize].s = keep_s;
        self.nodes[x as usize].parent = keep_parent;
        self.nodes[x as usize].qchild = keep_qchild;
        match self.nodes[x as usize].kind {
            Kind::Leaf => {
                let col = self.nodes[x as usize].child;
                self.leaf_node[col as usize] = x;
            }
            Kind::P => {
                let head = self.nodes[x as usize].child;
                if head != NIL {
                    for m in self.p_ring_members(head) {
                        self.nodes[m as usize].parent = x;
                    }
                }
            }
            Kind::Q => {
                let (a, b) = (self.nodes[x as usize].child, self.nodes[x as usize].rchild);
                for e in [a, b] {
                    self.nodes[e as usize].parent = x;
                }
            }
        }
        self.free.push(c);
    }

    fn q_template(&mut self, x: u32, is_root: bool, ready: &mut Ready) -> Option<()> {
        let entry = self.nodes[x as usize].pertinent_entry;
        debug_assert_ne!(entry, NIL);
        // Expand the run of pertinent children around the entry.
        let mut run_count = 1u32;
        let mut ends = [entry, entry];
        let mut fell_off = [false, false];
        for d in 0..2 {
            let mut prev = entry;
            let mut cur = self.nodes[entry as usize].s[d];
            loop {
                if cur == NIL {
                    fell_off[d] = true;
                    break;
                }
                if !self.pertinent(cur) {
                    break;
                }
                run_count += 1;
                ends[d] = cur;
                let nx = self.step(prev, cur);
                prev = cur;
                cur = nx;
            }
        }
        if run_count != self.nodes[x as usize].pertinent_children {
            return None;
        }
        let partial = self.nodes[x as usize].partial_count;
        let pc = self.nodes[x as usize].partial_child;
        for &p in pc.iter().take(partial as usize) {
            if p != ends[0] && p != ends[1] {
                return None;
            }
        }
        if partial == 2 && (!is_root || ends[0] == ends[1]) {
            return None;
        }
        if is_root {
            for &p in pc.iter().take(partial as usize) {
                self.splice_partial_root(x, p);
            }
            return Some(());
        }
        if !fell_off[0] && !fell_off[1] {
            // The run is interior, so the node cannot end up one-sided.
            return None;
        }
        if partial == 1 {
            self.splice_partial_nonroot(x, pc[0], run_count, &fell_off)?;
        }
        self.nodes[x as usize].label = if fell_off[0] && fell_off[1] && partial == 0 {
            Label::Full
        } else {
            Label::Partial
        };
        self.report(x, ready)
    }

    /// Splices partial child `p` into the chain of the pertinent root `x`:
    /// full end toward the run interior, free when p is the whole run.
    fn splice_partial_root(&mut self, x: u32, p: u32) {
        let (pe, pf) = self.partial_ends(p);
        let [n0, n1] = self.nodes[p as usize].s;
        let toward = if n0 != NIL && self.pertinent(n0) {
            n0
        } else if n1 != NIL && self.pertinent(n1) {
            n1
        } else if n0 != NIL {
            n0
        } else {
            n1
        };
        self.q_splice(x, p, pf, pe, toward);
    }

    /// Splices partial child `p` into the chain of non-root `x`, which must
    /// come out one-sided ([empties][fulls] end to end). Fails when p's
    /// position would bury the full part in the interior.
    fn splice_partial_nonroot(
        &mut self,
        x: u32,
        p: u32,
        run_count: u32,
        fell_off: &[bool; 2],
    ) -> Option<()> {
        let (pe, pf) = self.partial_ends(p);
        let [n0, n1] = self.nodes[p as usize].s;
        let open = n0 == NIL || n1 == NIL;
        let whole = fell_off[0] && fell_off[1];
        let toward = if run_count == 1 {
            // p is the whole run and sits at the open end: full side out.
            debug_assert!(open);
            NIL
        } else if open && !whole {
            // p caps the open end but the run continues inward; the fulls
            // of x would end up with empties on both sides.
            return None;
        } else {
            // Full side faces p's pertinent neighbor.
            if n0 != NIL && self.pertinent(n0) {
                n0
            } else {
                debug_assert!(n1 != NIL && self.pertinent(n1));
                n1
            }
        };
        self.q_splice(x, p, pf, pe, toward);
        Some(())
    }

    // ----- frontier -----

    /// One represented column ordering.
    pub fn frontier(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.cols);
        if self.root == NIL {
            return out;
        }
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            let n = &self.nodes[x as usize];
            match n.kind {
                Kind::Leaf => out.push(n.child),
                Kind::P | Kind::Q => {
                    let members = if n.kind == Kind::P {
                        self.p_ring_members(n.child)
                    } else {
                        self.q_chain_members(x)
                    };
                    for m in members.into_iter().rev() {
                        stack.push(m);
                    }
                }
            }
        }
        out
    }

    fn q_chain_members(&self, x: u32) -> Vec<u32> {
        let mut out = Vec::new();
        let mut prev = NIL;
        let mut cur = self.nodes[x as usize].child;
        while cur != NIL {
            out.push(cur);
            let nx = self.step(prev, cur);
            prev = cur;
            cur = nx;
        }
        out
    }

    #[cfg(test)]
    fn check_consistency(&self) {
        use std::collections::HashSet;
        let mut seen_cols = HashSet::new();
        if self.root == NIL {
            assert_eq!(self.cols, 0);
            return;
        }
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            let n = &self.nodes[x as usize];
            match n.kind {
                Kind::Leaf => {
                    assert!(seen_cols.insert(n.child), "column {} twice", n.child);
                    assert_eq!(self.leaf_node[n.child as usize], x, "leaf table at {x}");
                }
                Kind::P => {
                    let members = self.p_ring_members(n.child);
                    assert_eq!(members.len() as u32, n.child_count, "P count at {x}");
                    assert!(members.len() >= 2, "tiny P at {x}");
                    for &m in &members {
                        assert_eq!(self.nodes[m as usize].parent, x, "P parent at {m}");
                        assert!(!self.nodes[m as usize].qchild, "qchild flag at {m}");
                        stack.push(m);
                    }
                }
                Kind::Q => {
                    let members = self.q_chain_members(x);
                    assert!(members.len() >= 2, "tiny Q at {x}");
                    assert_eq!(*members.last().unwrap(), n.rchild, "Q rchild at {x}");
                    for &m in &members {
                        assert!(self.nodes[m as usize].qchild, "qchild flag at {m}");
                        stack.push(m);
                    }
                    for e in [members[0], *members.last().unwrap()] {
                        assert_eq!(self.nodes[e as usize].parent, x, "Q end parent at {e}");
                    }
                }
            }
        }
        assert_eq!(seen_cols.len(), self.cols, "missing columns");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Reference check: does some permutation of 0..k make every set
    /// consecutive? Plain permutation enumeration, only for small k.
    fn c1p_brute(k: usize, sets: &[Vec<u32>]) -> bool {
        let mut perm: Vec<u32> = (0..k as u32).collect();
        let mut pos = vec![0usize; k];
        loop {
            for (i, &c) in perm.iter().enumerate() {
                pos[c as usize] = i;
            }
            let ok = sets.iter().all(|s| {
                let mut mn = usize::MAX;
                let mut mx = 0;
                for &c in s {
                    mn = mn.min(pos[c as usize]);
                    mx = mx.max(pos[c as usize]);
                }
                mx - mn + 1 == s.len()
            });
            if ok {
                return true;
            }
            // Next lexicographic permutation.
            let Some(i) = (0..k - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
                return false;
            };
            let j = (i + 1..k).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
    }

    fn run_sets(k: usize, sets: &[Vec<u32>]) -> (bool, Option<Vec<u32>>) {
        let mut t = PqTree::new(k);
        for s in sets {
            if !t.reduce(s) {
                return (false, None);
            }
            t.check_consistency();
        }
        (true, Some(t.frontier()))
    }

    fn frontier_satisfies(frontier: &[u32], sets: &[Vec<u32>]) -> bool {
        sets.iter().all(|s| {
            let pos: Vec<usize> = s
                .iter()
                .map(|&c| frontier.iter().position(|&p| p == c).unwrap())
                .collect();
            let (mn, mx) = (*pos.iter().min().unwrap(), *pos.iter().max().unwrap());
            mx - mn + 1 == s.len()
        })
    }

    #[test]
    fn basic_accept_and_reject() {
        let sets = vec![vec![0, 1], vec![1, 2], vec![3, 4]];
        let (ok, f) = run_sets(5, &sets);
        assert!(ok);
        assert!(frontier_satisfies(&f.unwrap(), &sets));
        // Three pairwise-overlapping pairs admit no linear arrangement.
        let (ok, _) = run_sets(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]);
        assert!(!ok);
    }

    #[test]
    fn q_chains_and_reversals() {
        let sets = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 2, 3]];
        let (ok, f) = run_sets(5, &sets);
        assert!(ok);
        assert!(frontier_satisfies(&f.unwrap(), &sets));
    }

    #[test]
    fn overlapping_triples_merge() {
        let sets = vec![
            vec![0, 1, 2],
            vec![2, 3, 4],
            vec![4, 5, 6],
            vec![1, 2, 3],
            vec![3, 4, 5],
        ];
        let (ok, f) = run_sets(7, &sets);
        assert_eq!(ok, c1p_brute(7, &sets));
        if let Some(f) = f {
            assert!(frontier_satisfies(&f, &sets));
        }
    }

    #[test]
    fn differential_random_small() {
        // Deterministic xorshift; compare against permutation brute force.
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..900 {
            let k = 2 + (rng() % 5) as usize; // 2..=6 columns
            let nsets = 1 + (rng() % 5) as usize;
            let sets: Vec<Vec<u32>> = (0..nsets)
                .map(|_| {
                    let mut s: Vec<u32> = (0..k as u32).filter(|_| rng() % 2 == 0).collect();
                    if s.len() < 2 {
                        s = vec![(rng() % k as u64) as u32, (rng() % k as u64) as u32];
                    }
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .filter(|s| s.len() >= 2)
                .collect();
            if sets.is_empty() {
                continue;
            }
            let expect = c1p_brute(k, &sets);
            let (got, f) = run_sets(k, &sets);
            assert_eq!(got, expect, "trial {trial}: k={k} sets={sets:?}");
            if let Some(f) = f {
                assert!(
                    frontier_satisfies(&f, &sets),
                    "trial {trial}: frontier {f:?} sets={sets:?}"
                );
            }
        }
    }

    #[test]
    fn differential_random_seven_cols() {
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for trial in 0..80 {
            let k = 7usize;
            let nsets = 2 + (rng() % 4) as usize;
            let sets: Vec<Vec<u32>> = (0..nsets)
                .map(|_| {
                    let mut s: Vec<u32> = (0..k as u32).filter(|_| rng() % 2 == 0).collect();
                    if s.len() < 2 {
                        s = vec![0, 1 + (rng() % 6) as u32];
                    }
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .filter(|s| s.len() >= 2)
                .collect();
            let expect = c1p_brute(k, &sets);
            let (got, f) = run_sets(k, &sets);
            assert_eq!(got, expect, "trial {trial}: sets={sets:?}");
            if let Some(f) = f {
                assert!(frontier_satisfies(&f, &sets), "trial {trial}");
            }
        }
    }

    #[test]
    fn large_path_constraints_fast() {
        // 50k columns chained pairwise; exercises stamped state reuse and
        // incremental Q-chain growth.
        let k = 50_000;
        let mut t = PqTree::new(k);
        for i in 0..k as u32 - 1 {
            assert!(t.reduce(&[i, i + 1]));
        }
        let f = t.frontier();
        assert_eq!(f.len(), k);
        let ok_fwd = f.windows(2).all(|w| w[1] == w[0] + 1);
        let ok_rev = f.windows(2).all(|w| w[0] == w[1] + 1);
        assert!(ok_fwd || ok_rev);
    }
}
