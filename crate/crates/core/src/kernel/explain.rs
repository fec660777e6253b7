use crate::typeinf::{PType, TypeAssignment};

/// Every (graph id, node id) whose type at `t`'s depth equals `t`, in
/// graph then node order. Unseen types, `Empty` and depths beyond the
/// assignment give an empty list.
pub fn retrieve_instances(assignment: &TypeAssignment, t: &PType) -> Vec<(String, String)> {
    let Some(d) = t.depth().filter(|&d| d <= assignment.h_max()) else {
        return Vec::new();
    };
    let Some(slot) = assignment.table(d).iter().position(|x| x == t) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for (g, gid) in assignment.graph_ids().iter().enumerate() {
        for (n, nid) in assignment.node_ids(g).iter().enumerate() {
            if assignment.slot(g, n, d) == Some(slot as u32) {
                out.push((gid.clone(), nid.clone()));
            }
        }
    }
    out
}
