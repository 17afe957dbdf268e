use anyhow::{bail, Context, Result};
use cechlab::properties::{
    Context as SubsetContext, PropertyDescriptor, SmallGraph, SubsetPropertyDescriptor,
};

/// Parses a property name: `edge`, `path<N>`, `triangle`, `cycle<N>`,
/// `complete<N>`, `graph:<N>:<a-b,c-d,...>`, `spread`, `conn` or `zeta`.
pub fn parse_property(
    name: &str,
    r: f64,
    p: Option<usize>,
    theta: f64,
    k: usize,
) -> Result<PropertyDescriptor> {
    let need_p = || p.with_context(|| format!("property `{name}` needs --p"));
    let desc = match name {
        "edge" => PropertyDescriptor::iso_graph(SmallGraph::complete(2)?, r)?,
        "triangle" => PropertyDescriptor::iso_graph(SmallGraph::complete(3)?, r)?,
        "spread" => PropertyDescriptor::spread(r, need_p()?)?,
        "conn" => PropertyDescriptor::conn(r, need_p()?)?,
        "zeta" => PropertyDescriptor::zeta(r, need_p()?, theta, k)?,
        _ => PropertyDescriptor::iso_graph(parse_graph(name)?, r)?,
    };
    Ok(desc)
}

fn parse_graph(name: &str) -> Result<SmallGraph> {
    let sized = |prefix: &str| -> Option<Result<usize>> {
        name.strip_prefix(prefix).map(|n| {
            n.parse::<usize>()
                .with_context(|| format!("bad size in `{name}`"))
        })
    };
    if let Some(n) = sized("path") {
        return Ok(SmallGraph::path(n?)?);
    }
    if let Some(n) = sized("cycle") {
        return Ok(SmallGraph::cycle(n?)?);
    }
    if let Some(n) = sized("complete") {
        return Ok(SmallGraph::complete(n?)?);
    }
    if let Some(rest) = name.strip_prefix("graph:") {
        let (n, edges) = rest
            .split_once(':')
            .context("expected graph:<N>:<a-b,...>")?;
        let n: usize = n.parse().context("bad vertex count")?;
        let edges = edges
            .split(',')
            .filter(|e| !e.is_empty())
            .map(|e| {
                let (a, b) = e
                    .split_once('-')
                    .with_context(|| format!("bad edge `{e}`"))?;
                Ok((a.trim().parse()?, b.trim().parse()?))
            })
            .collect::<Result<Vec<(usize, usize)>>>()?;
        return Ok(SmallGraph::from_edges(n, &edges)?);
    }
    bail!("unknown property `{name}`")
}

/// Parses a context: `always` or `sep:<factor>`.
pub fn parse_context(text: &str) -> Result<SubsetContext> {
    match text {
        "always" => Ok(SubsetContext::Always),
        _ => {
            let factor = text.strip_prefix("sep:").with_context(|| {
                format!("unknown context `{text}` (expected `always` or `sep:<factor>`)")
            })?;
            Ok(SubsetContext::Sep {
                factor: factor.parse().context("bad separation factor")?,
            })
        }
    }
}

pub fn subset_property(
    name: &str,
    context: &str,
    r: f64,
    p: Option<usize>,
    theta: f64,
    k: usize,
) -> Result<SubsetPropertyDescriptor> {
    Ok(SubsetPropertyDescriptor::new(
        parse_property(name, r, p, theta, k)?,
        parse_context(context)?,
    )?)
}
