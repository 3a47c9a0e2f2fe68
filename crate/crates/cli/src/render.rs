//! SVG pictures of a domain with its graph drawn in the source plane.

use std::fmt::Write as _;

use reeb_core::domain::Domain;
use reeb_core::poly::{fiber_roots, refine_root};
use reeb_core::rational::{int, rat, to_f64};
use reeb_core::reeb::{critical_abscissas, source_embedding};
use reeb_core::{DomainSpec, PRGraph, Rational};

use crate::CliError;

/// Drawing window in domain coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Window {
    pub x_min: Rational,
    pub x_max: Rational,
    pub y_min: Rational,
    pub y_max: Rational,
}

impl Window {
    /// Parses `xmin,xmax,ymin,ymax`.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let parts: Vec<Rational> = s
            .split(',')
            .map(|p| reeb_core::rational::parse_rational(p).ok_or_else(|| CliError::Input(format!("`{p}` is not a rational"))))
            .collect::<Result<_, _>>()?;
        let [x_min, x_max, y_min, y_max]: [Rational; 4] =
            parts.try_into().map_err(|_| CliError::Input("window needs four values".into()))?;
        let w = Window { x_min, x_max, y_min, y_max };
        w.check()?;
        Ok(w)
    }

    fn check(&self) -> Result<(), CliError> {
        if self.x_min >= self.x_max || self.y_min >= self.y_max {
            return Err(CliError::Input("window is empty".into()));
        }
        Ok(())
    }
}

/// Columns sampled across the window for the curves.
const COLUMNS: i64 = 320;
/// Grid cells per side for the domain shading.
const CELLS: i64 = 64;
const SIZE: f64 = 600.0;

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        (x - self.x0) / (self.x1 - self.x0) * SIZE
    }

    fn py(&self, y: f64) -> f64 {
        SIZE - (y - self.y0) / (self.y1 - self.y0) * SIZE
    }
}

/// A window around the critical abscissas and the embedded graph.
fn default_window(spec: &DomainSpec, g: &PRGraph) -> Result<Window, CliError> {
    let crit = critical_abscissas(spec)?;
    let mut xs: Vec<Rational> = crit.iter().flat_map(|(x, _)| [x.lo.clone(), x.hi.clone()]).collect();
    let mut ys = Vec::new();
    for (_, pts) in &crit {
        for p in pts {
            ys.push(p.y.lo.clone());
            ys.push(p.y.hi.clone());
        }
    }
    if let Ok(emb) = source_embedding(spec, g) {
        for (x, y) in emb.edges.iter().flatten() {
            xs.push(x.clone());
            ys.push(y.clone());
        }
    }
    xs.push(spec.seed.0.clone());
    ys.push(spec.seed.1.clone());
    let span = |v: &[Rational]| {
        let lo = v.iter().min().unwrap().clone();
        let hi = v.iter().max().unwrap().clone();
        let pad = ((&hi - &lo) / int(4)).max(int(1));
        (&lo - &pad, &hi + &pad)
    };
    let (x_min, x_max) = span(&xs);
    let (y_min, y_max) = span(&ys);
    Ok(Window { x_min, x_max, y_min, y_max })
}

pub fn render_svg(spec: &DomainSpec, g: &PRGraph, window: Option<Window>) -> Result<String, CliError> {
    let w = match window {
        Some(w) => w,
        None => default_window(spec, g)?,
    };
    w.check()?;
    let d = Domain::new(spec)?;
    let fr = Frame { x0: to_f64(&w.x_min), x1: to_f64(&w.x_max), y0: to_f64(&w.y_min), y1: to_f64(&w.y_max) };
    let dx = (&w.x_max - &w.x_min) / int(CELLS);
    let dy = (&w.y_max - &w.y_min) / int(CELLS);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n<g fill=\"#cfe3f7\" stroke=\"none\" shape-rendering=\"crispEdges\">\n");
    let (cw, ch) = (SIZE / CELLS as f64, SIZE / CELLS as f64);
    for i in 0..CELLS {
        for j in 0..CELLS {
            let cx = &w.x_min + &dx * (rat(2 * i + 1, 2));
            let cy = &w.y_min + &dy * (rat(2 * j + 1, 2));
            if d.contains(&cx, &cy).unwrap_or(false) {
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.2}" y="{:.2}" width="{cw:.2}" height="{ch:.2}"/>"#,
                    i as f64 * cw,
                    SIZE - (j + 1) as f64 * ch
                );
            }
        }
    }
    out.push_str("</g>\n");

    // dashed lines at critical abscissas
    out.push_str("<g stroke=\"#999\" stroke-dasharray=\"4 4\" stroke-width=\"1\">\n");
    for (x, _) in critical_abscissas(spec)? {
        let px = fr.px(to_f64(&x.mid()));
        let _ = writeln!(out, r#"<line x1="{px:.2}" y1="0" x2="{px:.2}" y2="{SIZE}"/>"#);
    }
    out.push_str("</g>\n");

    // curves: connect roots of equal rank between consecutive columns of one slab
    out.push_str("<g fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n");
    let tol = &dy / int(64);
    for (c, f) in spec.curves.iter().enumerate() {
        let crit = d.curve(c).critical_abscissas();
        let mut runs: Vec<Vec<(f64, f64)>> = Vec::new();
        let mut open: Vec<usize> = Vec::new();
        let mut last: Option<(usize, usize)> = None;
        for i in 0..=COLUMNS {
            let x = &w.x_min + (&w.x_max - &w.x_min) * rat(i, COLUMNS);
            let slab = crit.iter().filter(|r| r.hi < x).count();
            if crit.iter().any(|r| r.contains(&x)) {
                last = None;
                continue;
            }
            let Ok(roots) = fiber_roots(f, &x) else {
                last = None;
                continue;
            };
            let u = f.eval_x(&x);
            let ys: Vec<f64> = roots
                .iter()
                .map(|r| to_f64(&refine_root(&u, r, &tol).map(|r| r.mid()).unwrap_or_else(|_| r.mid())))
                .collect();
            if last != Some((slab, ys.len())) {
                open = (0..ys.len()).map(|k| runs.len() + k).collect();
                runs.extend(ys.iter().map(|_| Vec::new()));
            }
            for (k, y) in ys.iter().enumerate() {
                runs[open[k]].push((fr.px(to_f64(&x)), fr.py(*y)));
            }
            last = Some((slab, ys.len()));
        }
        for run in runs.iter().filter(|r| r.len() > 1) {
            polyline(&mut out, run);
        }
    }
    out.push_str("</g>\n");

    // the graph in the source plane
    if let Ok(emb) = source_embedding(spec, g) {
        out.push_str("<g fill=\"none\" stroke=\"#c0392b\" stroke-width=\"2\">\n");
        for e in &emb.edges {
            let pts: Vec<(f64, f64)> = e.iter().map(|(x, y)| (fr.px(to_f64(x)), fr.py(to_f64(y)))).collect();
            polyline(&mut out, &pts);
        }
        out.push_str("</g>\n<g fill=\"#c0392b\">\n");
        for (x, y) in emb.vertices.iter().flatten() {
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="4"/>"#, fr.px(to_f64(x)), fr.py(to_f64(y)));
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn polyline(out: &mut String, pts: &[(f64, f64)]) {
    out.push_str("<polyline points=\"");
    for (k, (x, y)) in pts.iter().enumerate() {
        if k > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{x:.2},{y:.2}");
    }
    out.push_str("\"/>\n");
}
