pub mod error;
pub mod fgab;
pub mod matrix;
pub mod snf;
pub mod ringalg;
pub mod mackey;
pub mod witt;
pub mod thr;
pub mod graded;
pub mod acceptance;
pub mod json;
pub mod cli;

#[cfg(doctest)]
mod booktest {
    macro_rules! chapters {
        ($($i:ident),*) => {
            $(#[doc = include_str!(concat!("../../../book/src/", stringify!($i), ".md"))] mod $i {})*
        };
    }
    chapters!(intro, groups, rings, mackey, witt, thr, graded, cli);
}
