//! Resolving `--graph` / `--input` arguments to graphs.

use std::path::Path;

use occupancy_core::graph::{generate, parse_graph6, parse_graph6_list, FamilySpec, Graph};

/// A family string (`k:4`, `gp:7,2`, `t3`, ...), an inline `g6:<graph6>`,
/// or a path to a graph6 list.
pub fn load_graphs(spec: &str) -> Result<Vec<Graph>, String> {
    if let Some(code) = spec.strip_prefix("g6:") {
        return parse_graph6(code)
            .map(|g| vec![g])
            .map_err(|e| format!("graph {spec:?}: {e}"));
    }
    let family_err = match spec.parse::<FamilySpec>() {
        Ok(family) => {
            return generate(&family)
                .map(|g| vec![g])
                .map_err(|e| format!("graph {spec:?}: {e}"))
        }
        Err(e) => e,
    };
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("reading {spec}: {e}"))?;
        return parse_graph6_list(&text).map_err(|(line, e)| format!("{spec}:{line}: {e}"));
    }
    Err(format!(
        "graph {spec:?} is not a family, g6: string, or existing file ({family_err})"
    ))
}
