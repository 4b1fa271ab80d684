//! JSON file formats: instances, results, cover graphs, embedded plane
//! graphs, and directed graphs for the reduction generator. Coordinates and
//! weights travel as exact strings ("p/q", integers, or decimals).

use crate::arrangement::{ObstacleSubgraphs, PlaneGraph, SigmaEntry};
use crate::error::Error;
use crate::gen::DirectedGraph;
use crate::geom::parity::ReferencePath;
use crate::geom::shape::{Obstacle, Shape};
use crate::geom::Point;
use crate::instance::Instance;
use crate::num::{parse_rat, rat_to_f64, rat_to_string, Rat};
use crate::solvers::SeparatorResult;
use serde::{Deserialize, Serialize};

fn coord(v: &serde_json::Value) -> Result<Rat, Error> {
    let s = match v {
        serde_json::Value::String(s) => s.clone(),
        serde_json::Value::Number(n) => n.to_string(),
        _ => return Err(Error::Parse("coordinate must be a string or number".into())),
    };
    parse_rat(&s).ok_or_else(|| Error::Parse(format!("bad rational '{s}'")))
}

fn point(v: &serde_json::Value) -> Result<Point, Error> {
    let arr = v.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
        Error::Parse("point must be a two-element array".into())
    })?;
    Ok(Point::new(coord(&arr[0])?, coord(&arr[1])?))
}

fn point_json(p: &Point) -> serde_json::Value {
    serde_json::json!([rat_to_string(&p.x), rat_to_string(&p.y)])
}

pub fn parse_instance(text: &str) -> Result<Instance, Error> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let s = point(v.get("s").ok_or_else(|| Error::Parse("missing s".into()))?)?;
    let t = point(v.get("t").ok_or_else(|| Error::Parse("missing t".into()))?)?;
    let pi = match v.get("pi") {
        None | Some(serde_json::Value::Null) => None,
        Some(serde_json::Value::Array(points)) => {
            let pts: Result<Vec<Point>, Error> = points.iter().map(point).collect();
            Some(ReferencePath::new(pts?)?)
        }
        Some(_) => return Err(Error::Parse("pi must be an array of points".into())),
    };
    let obstacles_json = v
        .get("obstacles")
        .and_then(|o| o.as_array())
        .ok_or_else(|| Error::Parse("missing obstacles array".into()))?;
    let mut obstacles = Vec::new();
    for (i, ob) in obstacles_json.iter().enumerate() {
        let id = ob
            .get("id")
            .and_then(|x| x.as_u64())
            .unwrap_or(i as u64) as u32;
        let weight = match ob.get("weight") {
            None => Rat::from_integer(1.into()),
            Some(w) => coord(w)?,
        };
        let kind = ob
            .get("kind")
            .and_then(|k| k.as_str())
            .ok_or_else(|| Error::Parse(format!("obstacle {i}: missing kind")))?;
        let shape = match kind {
            "segment" => {
                let pts = ob
                    .get("points")
                    .and_then(|p| p.as_array())
                    .filter(|p| p.len() == 2)
                    .ok_or_else(|| Error::Parse(format!("obstacle {i}: segment points")))?;
                Shape::Segment { a: point(&pts[0])?, b: point(&pts[1])? }
            }
            "polyline" => {
                let pts = ob
                    .get("points")
                    .and_then(|p| p.as_array())
                    .ok_or_else(|| Error::Parse(format!("obstacle {i}: polyline points")))?;
                let points: Result<Vec<Point>, Error> = pts.iter().map(point).collect();
                Shape::Polyline { points: points? }
            }
            "circle" | "disk" => {
                let center = point(
                    ob.get("center")
                        .ok_or_else(|| Error::Parse(format!("obstacle {i}: center")))?,
                )?;
                let radius = coord(
                    ob.get("radius")
                        .ok_or_else(|| Error::Parse(format!("obstacle {i}: radius")))?,
                )?;
                if kind == "circle" {
                    Shape::Circle { center, radius }
                } else {
                    Shape::Disk { center, radius }
                }
            }
            other => return Err(Error::Parse(format!("unknown obstacle kind '{other}'"))),
        };
        obstacles.push(Obstacle { id, weight, shape });
    }
    Instance::new(obstacles, s, t, pi)
}

pub fn emit_instance(instance: &Instance) -> String {
    let obstacles: Vec<serde_json::Value> = instance
        .obstacles
        .iter()
        .map(|ob| {
            let mut o = serde_json::Map::new();
            o.insert("id".into(), serde_json::json!(ob.id));
            o.insert("weight".into(), serde_json::json!(rat_to_string(&ob.weight)));
            match &ob.shape {
                Shape::Segment { a, b } => {
                    o.insert("kind".into(), "segment".into());
                    o.insert("points".into(), serde_json::json!([point_json(a), point_json(b)]));
                }
                Shape::Polyline { points } => {
                    o.insert("kind".into(), "polyline".into());
                    o.insert(
                        "points".into(),
                        serde_json::Value::Array(points.iter().map(point_json).collect()),
                    );
                }
                Shape::Circle { center, radius } => {
                    o.insert("kind".into(), "circle".into());
                    o.insert("center".into(), point_json(center));
                    o.insert("radius".into(), serde_json::json!(rat_to_string(radius)));
                }
                Shape::Disk { center, radius } => {
                    o.insert("kind".into(), "disk".into());
                    o.insert("center".into(), point_json(center));
                    o.insert("radius".into(), serde_json::json!(rat_to_string(radius)));
                }
            }
            serde_json::Value::Object(o)
        })
        .collect();
    let default_pi = instance.pi.num_edges() == 1
        && instance.pi.s() == &instance.s
        && instance.pi.t() == &instance.t;
    let mut top = serde_json::Map::new();
    top.insert("schema_version".into(), serde_json::json!(1));
    top.insert("s".into(), point_json(&instance.s));
    top.insert("t".into(), point_json(&instance.t));
    if !default_pi {
        top.insert(
            "pi".into(),
            serde_json::Value::Array(instance.pi.vertices().iter().map(point_json).collect()),
        );
    }
    top.insert("obstacles".into(), serde_json::Value::Array(obstacles));
    let mut out = serde_json::to_string_pretty(&serde_json::Value::Object(top)).unwrap();
    out.push('\n');
    out
}

#[derive(Serialize, Deserialize)]
pub struct ResultFile {
    pub feasible: bool,
    pub weight: Option<String>,
    pub weight_decimal: Option<f64>,
    pub obstacle_ids: Vec<u32>,
    pub algorithm: String,
    pub wall_time_ms: f64,
}

pub fn emit_result(r: &SeparatorResult, wall_time_ms: f64) -> String {
    let file = ResultFile {
        feasible: r.feasible,
        weight: r.weight.as_ref().map(rat_to_string),
        weight_decimal: r.weight.as_ref().map(rat_to_f64),
        obstacle_ids: r.obstacle_ids.clone(),
        algorithm: r.algorithm.to_string(),
        wall_time_ms,
    };
    let mut out = serde_json::to_string_pretty(&file).unwrap();
    out.push('\n');
    out
}

/// Cover graph as JSON for golden tests and debugging.
pub fn emit_cover_graph(g: &crate::cover::CoverGraph) -> String {
    let vertices: Vec<serde_json::Value> = (0..g.num_vertices() as u32)
        .map(|v| {
            let info = g.info(v);
            serde_json::json!({"obstacle_id": info.obstacle_id, "bit": info.bit})
        })
        .collect();
    let edges: Vec<serde_json::Value> = g
        .edge_list()
        .into_iter()
        .map(|(u, v)| serde_json::json!([u, v]))
        .collect();
    let weights: serde_json::Map<String, serde_json::Value> = g
        .obstacle_ids
        .iter()
        .zip(&g.weights)
        .map(|(id, w)| (id.to_string(), serde_json::json!(rat_to_string(w))))
        .collect();
    let v = serde_json::json!({
        "vertices": vertices,
        "edges": edges,
        "weights": weights,
    });
    let mut out = serde_json::to_string_pretty(&v).unwrap();
    out.push('\n');
    out
}

/// Terminal of an embedded plane-graph file: a point or a face index.
pub enum TerminalSpec {
    At(Point),
    Face(usize),
}

pub struct ArrangementFile {
    pub graph: PlaneGraph,
    pub sigma: ObstacleSubgraphs,
    pub s: TerminalSpec,
    pub t: TerminalSpec,
}

pub fn parse_arrangement(text: &str) -> Result<ArrangementFile, Error> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let vertices: Result<Vec<Point>, Error> = v
        .get("vertices")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing vertices".into()))?
        .iter()
        .map(point)
        .collect();
    let vertices = vertices?;
    let edges: Result<Vec<(usize, usize)>, Error> = v
        .get("edges")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing edges".into()))?
        .iter()
        .map(|e| {
            let arr = e.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                Error::Parse("edge must be a pair".into())
            })?;
            let u = arr[0].as_u64().ok_or_else(|| Error::Parse("edge index".into()))?;
            let w = arr[1].as_u64().ok_or_else(|| Error::Parse("edge index".into()))?;
            Ok((u as usize, w as usize))
        })
        .collect();
    let edges = edges?;
    let graph = PlaneGraph::from_embedded(vertices, edges.clone())?;
    let mut sigma = ObstacleSubgraphs::default();
    for (i, ob) in v
        .get("obstacles")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing obstacles".into()))?
        .iter()
        .enumerate()
    {
        let id = ob.get("id").and_then(|x| x.as_u64()).unwrap_or(i as u64) as u32;
        let weight = match ob.get("weight") {
            None => Rat::from_integer(1.into()),
            Some(w) => coord(w)?,
        };
        let vertex_ids: Vec<usize> = ob
            .get("vertex_ids")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse(format!("obstacle {i}: vertex_ids")))?
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse("vertex id".into()))?;
        // The subgraph is the set of graph edges with both endpoints in the
        // vertex list.
        let vs: std::collections::BTreeSet<usize> = vertex_ids.iter().copied().collect();
        let sub_edges: Vec<usize> = edges
            .iter()
            .enumerate()
            .filter(|(_, (a, b))| vs.contains(a) && vs.contains(b))
            .map(|(e, _)| e)
            .collect();
        if sub_edges.is_empty() {
            return Err(Error::DisconnectedObstacleSubgraph(id));
        }
        let canonical_vertex = sub_edges
            .iter()
            .flat_map(|&e| [edges[e].0, edges[e].1])
            .max_by(|&a, &b| {
                let (pa, pb) = (&graph.vertices[a], &graph.vertices[b]);
                pa.y.cmp(&pb.y).then_with(|| pa.x.cmp(&pb.x))
            })
            .unwrap();
        sigma.entries.push(SigmaEntry { obstacle_id: id, weight, edges: sub_edges, canonical_vertex });
    }
    let terminal = |key: &str| -> Result<TerminalSpec, Error> {
        match v.get(key) {
            Some(serde_json::Value::Array(_)) => Ok(TerminalSpec::At(point(v.get(key).unwrap())?)),
            Some(serde_json::Value::Object(o)) => {
                let f = o
                    .get("face")
                    .and_then(|x| x.as_u64())
                    .ok_or_else(|| Error::Parse(format!("{key}: face index")))?;
                Ok(TerminalSpec::Face(f as usize))
            }
            _ => Err(Error::Parse(format!("missing terminal {key}"))),
        }
    };
    Ok(ArrangementFile { graph, sigma, s: terminal("s")?, t: terminal("t")? })
}

/// Directed graph input: {"n": 3, "edges": [[from, to, weight], ...]}.
pub fn parse_digraph(text: &str) -> Result<DirectedGraph, Error> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let n = v
        .get("n")
        .and_then(|x| x.as_u64())
        .ok_or_else(|| Error::Parse("missing n".into()))? as usize;
    let mut edges = Vec::new();
    for e in v
        .get("edges")
        .and_then(|x| x.as_array())
        .ok_or_else(|| Error::Parse("missing edges".into()))?
    {
        let arr = e
            .as_array()
            .filter(|a| a.len() == 3)
            .ok_or_else(|| Error::Parse("edge must be [from, to, weight]".into()))?;
        let u = arr[0].as_u64().ok_or_else(|| Error::Parse("edge from".into()))? as u32;
        let w = arr[1].as_u64().ok_or_else(|| Error::Parse("edge to".into()))? as u32;
        if u as usize >= n || w as usize >= n {
            return Err(Error::Parse("edge endpoint out of range".into()));
        }
        edges.push((u, w, coord(&arr[2])?));
    }
    Ok(DirectedGraph { n, edges })
}

pub fn emit_digraph(g: &DirectedGraph) -> String {
    let edges: Vec<serde_json::Value> = g
        .edges
        .iter()
        .map(|(u, v, w)| serde_json::json!([u, v, rat_to_string(w)]))
        .collect();
    let mut out =
        serde_json::to_string_pretty(&serde_json::json!({"n": g.n, "edges": edges})).unwrap();
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{random_instance, GenConfig, GenKind};

    #[test]
    fn instance_round_trip_exact() {
        for kind in [GenKind::Segments, GenKind::AxisAligned, GenKind::Polylines, GenKind::Disks] {
            let inst = random_instance(&GenConfig::new(5, kind).weighted(1, 100), 3);
            let text = emit_instance(&inst);
            let back = parse_instance(&text).unwrap();
            assert_eq!(back.s, inst.s);
            assert_eq!(back.t, inst.t);
            assert_eq!(back.obstacles.len(), inst.obstacles.len());
            for (a, b) in back.obstacles.iter().zip(&inst.obstacles) {
                assert_eq!(a.id, b.id);
                assert_eq!(a.weight, b.weight);
                assert_eq!(a.shape, b.shape);
            }
            assert_eq!(emit_instance(&back), text);
        }
    }

    #[test]
    fn coordinate_formats() {
        let text = r#"{
            "s": [0, "1/3"], "t": ["2.5", "1/3"],
            "obstacles": [
                {"kind": "segment", "points": [["1", "-1"], ["1", "1"]], "weight": "0.5"}
            ]
        }"#;
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.t.x, crate::num::ratio(5, 2));
        assert_eq!(inst.obstacles[0].weight, crate::num::ratio(1, 2));
    }

    #[test]
    fn malformed_rejected() {
        assert!(parse_instance("{").is_err());
        assert!(parse_instance(r#"{"s": [0,0]}"#).is_err());
        assert!(parse_instance(r#"{"s":[0,0],"t":[1,0],"obstacles":[{"kind":"widget"}]}"#)
            .is_err());
        assert!(parse_digraph(r#"{"n": 2, "edges": [[0, 5, 1]]}"#).is_err());
    }

    #[test]
    fn cover_graph_golden() {
        let inst = crate::gen::unit_triangle();
        let g = crate::cover::build_cover_graph(&inst).unwrap();
        let text = emit_cover_graph(&g);
        // Byte-deterministic output.
        assert_eq!(text, emit_cover_graph(&g));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["vertices"].as_array().unwrap().len(), 6);
        assert_eq!(v["vertices"][0], serde_json::json!({"obstacle_id": 0, "bit": 0}));
        let edges = v["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 6);
        assert_eq!(v["weights"]["0"], serde_json::json!("1"));
    }

    #[test]
    fn digraph_round_trip() {
        let g = crate::gen::random_digraph(5, 10, 9, 4);
        let text = emit_digraph(&g);
        let back = parse_digraph(&text).unwrap();
        assert_eq!(back, g);
    }
}
