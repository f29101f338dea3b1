use crate::instance::{CostMatrix, Instance, LatencyModel};
use crate::objective::Route;

/// One vehicle's cluster, relabelled to local indices `0..k` with the start
/// vertex at index 0.
#[derive(Debug, Clone)]
pub struct SubProblem {
    vertices: Vec<usize>,
    cost: CostMatrix,
    weight: Vec<f64>,
}

impl SubProblem {
    /// `cluster` lists the cluster's global vertex ids; `start` is moved to
    /// the front and the rest keep their order.
    pub fn new<M: LatencyModel + ?Sized>(model: &M, cluster: &[usize], start: usize) -> Self {
        let mut vertices = Vec::with_capacity(cluster.len() + 1);
        vertices.push(start);
        vertices.extend(cluster.iter().copied().filter(|&v| v != start));
        let k = vertices.len();
        let cost = CostMatrix::from_fn(k, |i, j| model.cost(vertices[i], vertices[j]));
        let weight = vertices.iter().map(|&v| model.weight(v)).collect();
        Self {
            vertices,
            cost,
            weight,
        }
    }

    /// The whole instance as one cluster, anchored at `start`.
    pub fn whole(inst: &Instance, start: usize) -> Self {
        let all: Vec<usize> = (0..inst.n()).collect();
        Self::new(inst, &all, start)
    }

    pub fn global_ids(&self) -> &[usize] {
        &self.vertices
    }

    /// Local order `0..k`, i.e. the cluster order given at construction.
    pub fn identity_order(&self) -> Vec<usize> {
        (0..self.vertices.len()).collect()
    }

    pub fn to_global(&self, local: &[usize]) -> Route {
        Route::new(local.iter().map(|&v| self.vertices[v]).collect())
    }

    pub fn costs(&self) -> &CostMatrix {
        &self.cost
    }
}

impl LatencyModel for SubProblem {
    fn size(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    fn cost(&self, from: usize, to: usize) -> f64 {
        self.cost.get(from, to)
    }

    #[inline]
    fn weight(&self, vertex: usize) -> f64 {
        self.weight[vertex]
    }
}

/// Per-vertex neighbours sorted by increasing edge cost (ties by index).
#[derive(Debug, Clone)]
pub struct CandidateLists {
    lists: Vec<Vec<usize>>,
}

impl CandidateLists {
    pub fn new<M: LatencyModel + ?Sized>(model: &M, per_vertex: usize) -> Self {
        let k = model.size();
        let lists = (0..k)
            .map(|u| {
                let mut others: Vec<usize> = (0..k).filter(|&v| v != u).collect();
                others.sort_by(|&a, &b| {
                    model
                        .cost(u, a)
                        .total_cmp(&model.cost(u, b))
                        .then(a.cmp(&b))
                });
                others.truncate(per_vertex);
                others
            })
            .collect();
        Self { lists }
    }

    pub fn of(&self, vertex: usize) -> &[usize] {
        &self.lists[vertex]
    }
}
