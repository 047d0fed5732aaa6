//! Bipartite agent-item consumption graphs.

use std::fmt;

use crate::allocation::{Allocation, FractionalAllocation, IntegralAllocation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Agent(usize),
    Item(usize),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Agent(i) => write!(f, "agent {i}"),
            Vertex::Item(o) => write!(f, "item {o}"),
        }
    }
}

/// Edge `{i, o}` exists iff agent `i` consumes a positive fraction of `o`.
/// Adjacency lists are sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsumptionGraph {
    agent_items: Vec<Vec<usize>>,
    item_agents: Vec<Vec<usize>>,
}

impl ConsumptionGraph {
    pub fn from_allocation(x: &FractionalAllocation) -> Self {
        let mut agent_items = vec![Vec::new(); x.num_agents()];
        let mut item_agents = Vec::with_capacity(x.num_items());
        for (o, column) in x.columns().iter().enumerate() {
            let consumers: Vec<usize> = column.iter().map(|(i, _)| *i).collect();
            for &i in &consumers {
                agent_items[i].push(o);
            }
            item_agents.push(consumers);
        }
        Self { agent_items, item_agents }
    }

    pub fn num_agents(&self) -> usize {
        self.agent_items.len()
    }

    pub fn num_items(&self) -> usize {
        self.item_agents.len()
    }

    pub fn items_of(&self, agent: usize) -> &[usize] {
        &self.agent_items[agent]
    }

    pub fn agents_of(&self, item: usize) -> &[usize] {
        &self.item_agents[item]
    }

    pub fn has_edge(&self, agent: usize, item: usize) -> bool {
        self.item_agents[item].binary_search(&agent).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.item_agents.iter().map(Vec::len).sum()
    }

    /// Edges as `(agent, item)` pairs, ordered by item then agent.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.item_agents
            .iter()
            .enumerate()
            .flat_map(|(o, agents)| agents.iter().map(move |&i| (i, o)))
    }

    /// Agents sharing at least one item with `agent`.
    pub fn neighbors(&self, agent: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.agent_items[agent]
            .iter()
            .flat_map(|&o| self.item_agents[o].iter().copied())
            .filter(|&j| j != agent)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_subgraph_of(&self, other: &ConsumptionGraph) -> bool {
        self.num_items() == other.num_items() && self.edges().all(|(i, o)| other.has_edge(i, o))
    }

    fn vertex_neighbors(&self, v: usize) -> &[usize] {
        let n = self.num_agents();
        if v < n {
            &self.agent_items[v]
        } else {
            &self.item_agents[v - n]
        }
    }

    fn to_vertex(&self, v: usize) -> Vertex {
        let n = self.num_agents();
        if v < n {
            Vertex::Agent(v)
        } else {
            Vertex::Item(v - n)
        }
    }

    /// One simple cycle as an alternating agent/item sequence, or `None` for a
    /// forest.
    ///
    /// Depth-first search starts at the lowest-index agent and visits the
    /// lowest-index neighbor first. The returned cycle starts at its
    /// lowest-index agent and continues toward the smaller of that agent's two
    /// items on the cycle.
    pub fn find_cycle(&self) -> Option<Vec<Vertex>> {
        let n = self.num_agents();
        let total = n + self.num_items();
        let mut state = vec![0u8; total]; // 0 new, 1 on stack, 2 done
        let mut parent = vec![usize::MAX; total];
        let mut stack: Vec<(usize, usize)> = Vec::new();

        for start in 0..total {
            if state[start] != 0 {
                continue;
            }
            state[start] = 1;
            stack.push((start, 0));
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                let adjacent = self.vertex_neighbors(v);
                if *next == adjacent.len() {
                    state[v] = 2;
                    stack.pop();
                    continue;
                }
                // adjacency stores the other side's raw index
                let w = if v < n { n + adjacent[*next] } else { adjacent[*next] };
                *next += 1;
                if w == parent[v] {
                    continue;
                }
                match state[w] {
                    0 => {
                        parent[w] = v;
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => {
                        let mut path = vec![v];
                        let mut cur = v;
                        while cur != w {
                            cur = parent[cur];
                            path.push(cur);
                        }
                        return Some(self.normalize_cycle(path));
                    }
                    _ => {}
                }
            }
        }
        None
    }

    fn normalize_cycle(&self, raw: Vec<usize>) -> Vec<Vertex> {
        let n = self.num_agents();
        let len = raw.len();
        let start = (0..len)
            .filter(|&k| raw[k] < n)
            .min_by_key(|&k| raw[k])
            .expect("bipartite cycle contains an agent");
        let forward = raw[(start + 1) % len];
        let backward = raw[(start + len - 1) % len];
        let ascending = forward <= backward;
        let step = |k: usize| if ascending { (start + k) % len } else { (start + len - k) % len };
        (0..len).map(|k| self.to_vertex(raw[step(k)])).collect()
    }
}

impl From<&FractionalAllocation> for ConsumptionGraph {
    fn from(x: &FractionalAllocation) -> Self {
        Self::from_allocation(x)
    }
}

impl From<&IntegralAllocation> for ConsumptionGraph {
    fn from(pi: &IntegralAllocation) -> Self {
        let mut agent_items = vec![Vec::new(); pi.num_agents()];
        for (o, &a) in pi.owners().iter().enumerate() {
            agent_items[a].push(o);
        }
        let item_agents = pi.owners().iter().map(|&a| vec![a]).collect();
        Self { agent_items, item_agents }
    }
}

/// `(agent, item)` edges of a cycle in traversal order, starting with the edge
/// leaving the cycle's first vertex.
pub fn cycle_edges(cycle: &[Vertex]) -> Vec<(usize, usize)> {
    let len = cycle.len();
    (0..len)
        .map(|k| match (cycle[k], cycle[(k + 1) % len]) {
            (Vertex::Agent(i), Vertex::Item(o)) | (Vertex::Item(o), Vertex::Agent(i)) => (i, o),
            _ => panic!("cycle is not alternating"),
        })
        .collect()
}
