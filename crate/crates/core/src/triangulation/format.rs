//! The `tri v1` text format: UTF-8, line oriented, `#` comments. The
//! serializer emits fields in a fixed order with single spaces so that
//! parse ∘ serialize is the identity byte-for-byte on its own output.

use super::{Cusp, CuspPath, CuspTriangle, Gluing, PathStep, Perm4, TriError, Triangulation};
use std::fmt::Write as _;

pub fn serialize_triangulation(tri: &Triangulation) -> String {
    let mut out = String::new();
    out.push_str("tri v1\n");
    writeln!(out, "name {}", tri.name).expect("string write");
    writeln!(out, "tetrahedra {}", tri.n_tet).expect("string write");
    for (t, row) in tri.gluings.iter().enumerate() {
        for (f, g) in row.iter().enumerate() {
            writeln!(
                out,
                "glue {t} {f} -> {} {} {}{}{}{}",
                g.tet,
                g.face,
                g.perm.0[0],
                g.perm.0[1],
                g.perm.0[2],
                g.perm.0[3]
            )
            .expect("string write");
        }
    }
    writeln!(out, "cusps {}", tri.cusps.len()).expect("string write");
    for c in &tri.cusps {
        write!(out, "cusp {} :", c.label).expect("string write");
        for &(t, v) in &c.corners {
            write!(out, " ({t},{v})").expect("string write");
        }
        out.push('\n');
    }
    for c in &tri.cusps {
        for (kind, path) in [("meridian", &c.meridian), ("longitude", &c.longitude)] {
            write!(out, "{kind} {} :", c.label).expect("string write");
            for s in &path.steps {
                write!(out, " ({},{},{},{})", s.triangle.tet, s.triangle.vertex, s.entry, s.exit)
                    .expect("string write");
            }
            out.push('\n');
        }
    }
    out
}

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Lines<'a> {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let item = self.items.get(self.pos).copied();
        self.pos += 1;
        item
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }
}

fn syntax(line: usize, message: impl Into<String>) -> TriError {
    TriError::Syntax { line, message: message.into() }
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize, TriError> {
    tok.parse().map_err(|_| syntax(line, format!("expected {what}, found `{tok}`")))
}

/// Parse a `tri v1` document. Edge classes and cusp partitions are derived
/// from the gluings and cross-checked against the declared cusp lines;
/// peripheral paths are validated for closure and intersection number.
pub fn parse_triangulation(text: &str) -> Result<Triangulation, TriError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines.next().ok_or_else(|| syntax(0, "empty input"))?;
    if header != "tri v1" {
        return Err(syntax(ln, "expected header `tri v1`"));
    }
    let (ln, name_line) = lines.next().ok_or_else(|| syntax(ln, "missing `name`"))?;
    let name = name_line
        .strip_prefix("name ")
        .ok_or_else(|| syntax(ln, "expected `name <string>`"))?
        .trim()
        .to_string();
    let (ln, ntet_line) = lines.next().ok_or_else(|| syntax(ln, "missing `tetrahedra`"))?;
    let n_tet = parse_usize(
        ln,
        ntet_line
            .strip_prefix("tetrahedra ")
            .ok_or_else(|| syntax(ln, "expected `tetrahedra <n>`"))?
            .trim(),
        "tetrahedron count",
    )?;

    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; n_tet];
    while let Some((ln, line)) = lines.peek() {
        let Some(rest) = line.strip_prefix("glue ") else { break };
        lines.next();
        let toks: Vec<&str> = rest.split_whitespace().collect();
        if toks.len() != 6 || toks[2] != "->" {
            return Err(syntax(ln, "expected `glue <i> <f> -> <j> <g> <p0p1p2p3>`"));
        }
        let i = parse_usize(ln, toks[0], "tet index")?;
        let f = parse_usize(ln, toks[1], "face index")?;
        let j = parse_usize(ln, toks[3], "tet index")?;
        let g = parse_usize(ln, toks[4], "face index")?;
        let digits: Vec<usize> =
            toks[5].chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<_>>()
                .ok_or_else(|| syntax(ln, "permutation must be four digits"))?;
        if digits.len() != 4 {
            return Err(syntax(ln, "permutation must be four digits"));
        }
        let perm = Perm4([digits[0], digits[1], digits[2], digits[3]]);
        if !perm.is_valid() {
            return Err(syntax(ln, format!("`{}` is not a permutation of 0123", toks[5])));
        }
        if i >= n_tet || f > 3 {
            return Err(syntax(ln, format!("tet {i} face {f} out of range")));
        }
        if gluings[i][f].is_some() {
            return Err(syntax(ln, format!("tet {i} face {f} glued twice")));
        }
        gluings[i][f] = Some(Gluing { tet: j, face: g, perm });
    }
    let mut full = Vec::with_capacity(n_tet);
    for (t, row) in gluings.into_iter().enumerate() {
        let mut out = [Gluing { tet: 0, face: 0, perm: Perm4::identity() }; 4];
        for (f, g) in row.into_iter().enumerate() {
            out[f] = g.ok_or(TriError::UngluedFace { tet: t, face: f })?;
        }
        full.push(out);
    }
    let mut tri = Triangulation::from_gluings(&name, n_tet, full)?;

    let (ln, cusps_line) = lines.next().ok_or_else(|| syntax(0, "missing `cusps`"))?;
    let declared = parse_usize(
        ln,
        cusps_line.strip_prefix("cusps ").ok_or_else(|| syntax(ln, "expected `cusps <k>`"))?.trim(),
        "cusp count",
    )?;
    if declared != tri.cusps.len() {
        return Err(TriError::DeclarationMismatch {
            what: format!("cusp count ({declared} declared, {} derived)", tri.cusps.len()),
        });
    }

    // Cusp lines fix labels and ordering; the declared corner sets must
    // coincide with the derived partition.
    let mut ordered: Vec<Cusp> = Vec::with_capacity(declared);
    for _ in 0..declared {
        let (ln, line) = lines.next().ok_or_else(|| syntax(0, "missing `cusp` line"))?;
        let rest = line.strip_prefix("cusp ").ok_or_else(|| syntax(ln, "expected `cusp <c> : ...`"))?;
        let (label, corner_text) =
            rest.split_once(" : ").ok_or_else(|| syntax(ln, "expected `cusp <c> : ...`"))?;
        let mut corners: Vec<(usize, usize)> = Vec::new();
        for tok in corner_text.split_whitespace() {
            let inner = tok
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| syntax(ln, format!("expected `(<i>,<v>)`, found `{tok}`")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| syntax(ln, format!("expected `(<i>,<v>)`, found `{tok}`")))?;
            corners.push((parse_usize(ln, a, "tet index")?, parse_usize(ln, b, "vertex index")?));
        }
        corners.sort_unstable();
        let found = tri
            .cusps
            .iter()
            .position(|c| c.corners == corners)
            .ok_or_else(|| TriError::DeclarationMismatch {
                what: format!("corner set of cusp {label}"),
            })?;
        let mut cusp = tri.cusps[found].clone();
        cusp.label = label.to_string();
        ordered.push(cusp);
    }
    let mut labels: Vec<&str> = ordered.iter().map(|c| c.label.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() != ordered.len() {
        return Err(TriError::DeclarationMismatch { what: "duplicate cusp labels".into() });
    }
    tri.cusps = ordered;

    for _ in 0..2 * declared {
        let (ln, line) = lines.next().ok_or_else(|| syntax(0, "missing peripheral line"))?;
        let (kind, rest) = line
            .split_once(' ')
            .filter(|(k, _)| *k == "meridian" || *k == "longitude")
            .ok_or_else(|| syntax(ln, "expected `meridian` or `longitude` line"))?;
        let (label, steps_text) =
            rest.split_once(" : ").ok_or_else(|| syntax(ln, "expected `<c> : ...`"))?;
        let idx = tri
            .cusp_index(label)
            .ok_or_else(|| syntax(ln, format!("unknown cusp label `{label}`")))?;
        let mut steps = Vec::new();
        for tok in steps_text.split_whitespace() {
            let inner = tok
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| syntax(ln, format!("expected `(<i>,<v>,<in>,<out>)`, found `{tok}`")))?;
            let parts: Vec<usize> = inner
                .split(',')
                .map(|p| parse_usize(ln, p, "path index"))
                .collect::<Result<_, _>>()?;
            if parts.len() != 4 {
                return Err(syntax(ln, format!("expected four fields in `{tok}`")));
            }
            steps.push(PathStep {
                triangle: CuspTriangle { tet: parts[0], vertex: parts[1] },
                entry: parts[2],
                exit: parts[3],
            });
        }
        let path = CuspPath { steps };
        match kind {
            "meridian" => tri.cusps[idx].meridian = path,
            _ => tri.cusps[idx].longitude = path,
        }
    }
    if let Some((ln, line)) = lines.next() {
        return Err(syntax(ln, format!("unexpected trailing content `{line}`")));
    }
    tri.validate_peripheral()?;
    Ok(tri)
}
