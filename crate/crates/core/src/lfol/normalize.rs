use super::{Expr, Node};

/// Weak head normal form, reducing the leftmost-outermost redex first.
fn whnf(e: &Expr) -> Expr {
    match e.node() {
        Node::App(f, a) => {
            let head = whnf(f);
            match head.node() {
                Node::Lam(_, _, body) => whnf(&body.instantiate(a)),
                _ if head.ptr_eq(f) => e.clone(),
                _ => Expr::app(head, a.clone()),
            }
        }
        _ => e.clone(),
    }
}

/// Full beta normal form in normal order. Eta is not applied.
pub fn beta_normalize(e: &Expr) -> Expr {
    match e.node() {
        Node::Lam(h, s, b) => {
            let nb = beta_normalize(b);
            if nb.ptr_eq(b) {
                e.clone()
            } else {
                Expr::lam(h, s.clone(), nb)
            }
        }
        Node::App(..) => {
            let w = whnf(e);
            match w.node() {
                Node::App(f, a) => {
                    let (nf, na) = (beta_normalize(f), beta_normalize(a));
                    if nf.ptr_eq(f) && na.ptr_eq(a) {
                        w
                    } else {
                        Expr::app(nf, na)
                    }
                }
                _ => beta_normalize(&w),
            }
        }
        _ => e.clone(),
    }
}

pub fn is_beta_normal(e: &Expr) -> bool {
    match e.node() {
        Node::App(f, a) => !matches!(f.node(), Node::Lam(..)) && is_beta_normal(f) && is_beta_normal(a),
        Node::Lam(_, _, b) => is_beta_normal(b),
        _ => true,
    }
}

/// Alpha-equivalence. With de Bruijn binders this is structural equality.
pub fn alpha_eq(a: &Expr, b: &Expr) -> bool {
    a == b
}
