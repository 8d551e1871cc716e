use super::terms::{self, forall_in2, names::*};
use crate::kernel::Definition;
use crate::lfol::{beta_normalize, logic::*, sym, Expr, Sort};

fn lam(h: &str, s: Sort, f: impl FnOnce(Expr) -> Expr) -> Expr {
    Expr::lam_with(h, s, f)
}

fn ind_lam(h: &str, f: impl FnOnce(Expr) -> Expr) -> Expr {
    Expr::lam_with(h, Sort::Ind, f)
}

fn def(name: &str, params: &[&str], definiens: Expr) -> Definition {
    let (sorts, result) = terms::constant_sort(name).expect("known constant");
    Definition {
        name: sym(name),
        params: params.iter().zip(sorts).map(|(p, s)| (sym(p), s)).collect(),
        result,
        definiens: beta_normalize(&definiens),
    }
}

/// `z` is characterized by `forall w. w in z <=> prop(w)`.
fn characterized(prop: impl Fn(Expr) -> Expr) -> Expr {
    eps("z", |z| forall("w", |w| iff(mem(w.clone(), z), prop(w))))
}

/// All definitions in dependency order.
pub fn definitions() -> Vec<Definition> {
    let mut out = Vec::new();

    out.push(def(EMPTY, &[], characterized(|_| bot())));
    out.push(def(
        PAIR,
        &["a", "b"],
        ind_lam("a", |a| {
            ind_lam("b", |b| characterized(|w| or(eq(w.clone(), a.clone()), eq(w, b.clone()))))
        }),
    ));
    out.push(def(
        UNION,
        &["a"],
        ind_lam("a", |a| {
            characterized(|w| exists("y", |y| and(mem(y.clone(), a.clone()), mem(w, y))))
        }),
    ));
    out.push(def(
        SUBSET,
        &["a", "b"],
        ind_lam("a", |a| ind_lam("b", |b| forall_in("x", a, |x| mem(x, b)))),
    ));
    out.push(def(
        POWER,
        &["a"],
        ind_lam("a", |a| characterized(|w| terms::subset(w, a.clone()))),
    ));
    out.push(def(
        SINGLETON,
        &["a"],
        ind_lam("a", |a| terms::pair(a.clone(), a)),
    ));
    out.push(def(
        OPAIR,
        &["a", "b"],
        ind_lam("a", |a| {
            ind_lam("b", |b| terms::pair(terms::singleton(a.clone()), terms::pair(a, b)))
        }),
    ));
    out.push(def(
        SEP,
        &["A", "P"],
        ind_lam("A", |s| {
            lam("P", Sort::predicate(), |p| {
                characterized(|w| and(mem(w.clone(), s.clone()), Expr::app(p.clone(), w)))
            })
        }),
    ));
    out.push(def(
        IMAGE,
        &["A", "F"],
        ind_lam("A", |s| {
            lam("F", Sort::family(), |f| {
                characterized(|w| {
                    exists("x", |x| and(mem(x.clone(), s.clone()), eq(w, Expr::app(f.clone(), x))))
                })
            })
        }),
    ));
    out.push(def(
        PROD,
        &["A", "B"],
        ind_lam("A", |a| {
            ind_lam("B", |b| {
                let carrier = terms::power(terms::power(terms::union(terms::pair(a.clone(), b.clone()))));
                terms::sep(
                    carrier,
                    ind_lam("p", |p| {
                        exists("x", |x| {
                            and(
                                mem(x.clone(), a),
                                exists("y", |y| and(mem(y.clone(), b), eq(p, terms::opair(x, y)))),
                            )
                        })
                    }),
                )
            })
        }),
    ));
    out.push(def(
        EXU,
        &["P"],
        lam("P", Sort::predicate(), |p| {
            exists("y", |y| {
                and(
                    Expr::app(p.clone(), y.clone()),
                    forall("z", |z| implies(Expr::app(p, z.clone()), eq(z, y))),
                )
            })
        }),
    ));
    out.push(def(
        IS_FUNC,
        &["f", "T"],
        ind_lam("f", |f| {
            ind_lam("T", |t| {
                forall_in("x", t, |x| terms::exu(ind_lam("y", |y| mem(terms::opair(x, y), f))))
            })
        }),
    ));
    out.push(def(
        RANGE,
        &["f"],
        ind_lam("f", |f| {
            terms::sep(
                terms::union(terms::union(f.clone())),
                ind_lam("y", |y| exists("x", |x| mem(terms::opair(x, y), f))),
            )
        }),
    ));
    out.push(def(
        FNSPACE,
        &["A", "B"],
        ind_lam("A", |a| {
            ind_lam("B", |b| {
                terms::sep(
                    terms::power(terms::prod(a.clone(), b)),
                    ind_lam("f", |f| terms::is_func(f, a)),
                )
            })
        }),
    ));
    out.push(def(
        IS_GROTHENDIECK,
        &["U"],
        ind_lam("U", |u| {
            and_all([
                forall_in("y", u.clone(), |y| terms::subset(y, u.clone())),
                forall_in2(&u, |y, z| mem(terms::pair(y, z), u.clone())),
                forall_in("y", u.clone(), |y| mem(terms::union(y), u.clone())),
                forall_in("y", u.clone(), |y| mem(terms::power(y), u.clone())),
                forall_in("A", u.clone(), |a| {
                    forall("G", |g| {
                        implies(
                            mem(g.clone(), terms::fnspace(a, u.clone())),
                            mem(terms::range(g), u.clone()),
                        )
                    })
                }),
            ])
        }),
    ));
    out.push(def(
        IS_UNIVERSE,
        &["U"],
        ind_lam("U", |u| {
            and_all([
                forall_in("x", u.clone(), |x| {
                    and_all([
                        terms::subset(x.clone(), u.clone()),
                        mem(terms::union(x.clone()), u.clone()),
                        mem(terms::power(x), u.clone()),
                    ])
                }),
                forall_in2(&u, |x, y| mem(terms::pair(x, y), u.clone())),
                forall_in("A", u.clone(), |a| {
                    forall_in("f", u.clone(), |f| {
                        implies(
                            mem(f.clone(), terms::fnspace(a, u.clone())),
                            mem(terms::range(f), u.clone()),
                        )
                    })
                }),
            ])
        }),
    ));
    out.push(def(
        UNIVERSE_OF,
        &["x"],
        ind_lam("x", |x| eps("U", |u| and(mem(x, u.clone()), terms::is_universe(u)))),
    ));
    out.push(def(
        ABS,
        &["T", "L"],
        ind_lam("T", |t| {
            lam("L", Sort::family(), |l| {
                terms::image(t, ind_lam("x", |x| terms::opair(x.clone(), Expr::app(l, x))))
            })
        }),
    ));
    out.push(def(
        APP,
        &["t", "u"],
        ind_lam("t", |t| ind_lam("u", |u| eps("y", |y| mem(terms::opair(u, y), t)))),
    ));
    out.push(def(
        PI,
        &["T1", "L"],
        ind_lam("T1", |t1| {
            lam("L", Sort::family(), |l| {
                let codomain = terms::union(terms::image(t1.clone(), l.clone()));
                terms::sep(
                    terms::power(terms::prod(t1.clone(), codomain)),
                    ind_lam("f", |f| {
                        and(
                            terms::is_func(f.clone(), t1.clone()),
                            forall_in("x", t1, |x| {
                                mem(terms::app(f, x.clone()), Expr::app(l, x))
                            }),
                        )
                    }),
                )
            })
        }),
    ));
    out
}
