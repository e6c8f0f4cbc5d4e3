//! `#[derive(Data)]`: generates the generic term interface for a datatype.
//!
//! Supported shapes are structs (named, tuple, unit) and enums whose
//! variants are any of those. Fields of type `Box<T>` are exposed as
//! children of type `T`. Generic datatypes are rejected; register each
//! instantiation through a concrete type instead.

use proc_macro::TokenStream;
use proc_macro2::{Span, TokenStream as TokenStream2};
use quote::{format_ident, quote};
use syn::{parse_macro_input, Data, DeriveInput, Fields, GenericArgument, PathArguments, Type};

#[proc_macro_derive(Data)]
pub fn derive_data(input: TokenStream) -> TokenStream {
    let input = parse_macro_input!(input as DeriveInput);
    expand(input)
        .unwrap_or_else(|e| e.to_compile_error())
        .into()
}

struct Field {
    ty: Type,
    boxed: bool,
}

struct Con {
    name: String,
    /// Path used in patterns and constructor expressions.
    path: TokenStream2,
    fields: Vec<Field>,
    named: Option<Vec<syn::Ident>>,
    unit: bool,
}

fn unbox(ty: &Type) -> Field {
    if let Type::Path(p) = ty {
        if p.qself.is_none() {
            if let Some(last) = p.path.segments.last() {
                if last.ident == "Box" {
                    if let PathArguments::AngleBracketed(args) = &last.arguments {
                        if let Some(GenericArgument::Type(inner)) = args.args.first() {
                            return Field {
                                ty: inner.clone(),
                                boxed: true,
                            };
                        }
                    }
                }
            }
        }
    }
    Field {
        ty: ty.clone(),
        boxed: false,
    }
}

fn constructor(name: String, path: TokenStream2, fields: &Fields) -> Con {
    let (named, unit) = match fields {
        Fields::Named(f) => (
            Some(f.named.iter().map(|f| f.ident.clone().unwrap()).collect()),
            false,
        ),
        Fields::Unnamed(_) => (None, false),
        Fields::Unit => (None, true),
    };
    Con {
        name,
        path,
        fields: fields.iter().map(|f| unbox(&f.ty)).collect(),
        named,
        unit,
    }
}

fn expand(input: DeriveInput) -> syn::Result<TokenStream2> {
    if !input.generics.params.is_empty() {
        return Err(syn::Error::new_spanned(
            &input.generics,
            "#[derive(Data)] does not support generic datatypes",
        ));
    }
    let ident = &input.ident;
    let type_name = ident.to_string();
    let cons: Vec<Con> = match &input.data {
        Data::Struct(s) => vec![constructor(type_name.clone(), quote!(#ident), &s.fields)],
        Data::Enum(e) => e
            .variants
            .iter()
            .map(|v| {
                let vi = &v.ident;
                constructor(vi.to_string(), quote!(#ident::#vi), &v.fields)
            })
            .collect(),
        Data::Union(u) => {
            return Err(syn::Error::new_spanned(
                u.union_token,
                "#[derive(Data)] does not support unions",
            ))
        }
    };

    let krate = quote!(::strategem::term);

    let descriptor_cons = cons.iter().map(|c| {
        let name = &c.name;
        let tys = c.fields.iter().map(|f| &f.ty);
        quote! {
            #krate::ConstructorDesc::new(
                #name,
                ::std::vec![#(<#tys as #krate::Data>::type_name().into_owned()),*],
            )
        }
    });

    let binders = |c: &Con| -> Vec<syn::Ident> {
        (0..c.fields.len())
            .map(|i| format_ident!("__f{}", i, span = Span::mixed_site()))
            .collect()
    };

    let pattern = |c: &Con, bind: bool| -> TokenStream2 {
        let path = &c.path;
        if c.unit {
            return quote!(#path);
        }
        if !bind {
            return match &c.named {
                Some(_) => quote!(#path { .. }),
                None => quote!(#path(..)),
            };
        }
        let vars = binders(c);
        match &c.named {
            Some(names) => quote!(#path { #(#names: #vars),* }),
            None => quote!(#path(#(#vars),*)),
        }
    };

    let constructor_arms = cons.iter().enumerate().map(|(index, c)| {
        let pat = pattern(c, false);
        let name = &c.name;
        let arity = c.fields.len();
        quote! {
            #pat => #krate::Constructor { index: #index, name: #name, arity: #arity }
        }
    });

    let children_arms = cons.iter().map(|c| {
        let pat = pattern(c, true);
        let kids = binders(c).into_iter().zip(&c.fields).map(|(v, f)| {
            if f.boxed {
                quote!(#krate::Term::new((**#v).clone()))
            } else {
                quote!(#krate::Term::new(::std::clone::Clone::clone(#v)))
            }
        });
        quote! {
            #pat => ::std::vec![#(#kids),*]
        }
    });

    let rebuild_arms = cons.iter().map(|c| {
        let pat = pattern(c, false);
        let path = &c.path;
        let values: Vec<TokenStream2> = c
            .fields
            .iter()
            .map(|f| {
                let ty = &f.ty;
                if f.boxed {
                    quote!(::std::boxed::Box::new(__kids.next::<#ty>()?))
                } else {
                    quote!(__kids.next::<#ty>()?)
                }
            })
            .collect();
        let build = if c.unit {
            quote!(#path)
        } else {
            match &c.named {
                Some(names) => quote!(#path { #(#names: #values),* }),
                None => quote!(#path(#(#values),*)),
            }
        };
        quote! {
            #pat => #build
        }
    });

    let field_types: Vec<&Type> = cons
        .iter()
        .flat_map(|c| c.fields.iter().map(|f| &f.ty))
        .collect();

    // Empty enums have no values; every method body is unreachable.
    let (constructor_body, children_body, rebuild_body) = if cons.is_empty() {
        (
            quote!(match *self {}),
            quote!(match *self {}),
            quote!({
                let _ = __kids;
                match *self {}
            }),
        )
    } else {
        (
            quote!(match self { #(#constructor_arms,)* }),
            quote!(match self { #(#children_arms,)* }),
            quote!({
                let mut __kids = #krate::Kids::new(#krate::Data::constructor(self), __kids)?;
                ::std::result::Result::Ok(match self { #(#rebuild_arms,)* })
            }),
        )
    };

    Ok(quote! {
        impl #krate::Data for #ident {
            fn type_name() -> ::std::borrow::Cow<'static, str> {
                ::std::borrow::Cow::Borrowed(#type_name)
            }

            fn descriptor() -> #krate::Descriptor {
                #krate::Descriptor::algebraic(#type_name, ::std::vec![#(#descriptor_cons),*])
            }

            fn constructor(&self) -> #krate::Constructor {
                #constructor_body
            }

            #[allow(clippy::clone_on_copy)]
            fn children(&self) -> ::std::vec::Vec<#krate::Term> {
                #children_body
            }

            fn rebuild(
                &self,
                __kids: ::std::vec::Vec<#krate::Term>,
            ) -> ::std::result::Result<Self, #krate::TermError> {
                #rebuild_body
            }

            fn register_fields(
                __registry: &mut ::strategem::registry::RegistryBuilder,
            ) -> ::std::result::Result<(), ::strategem::registry::RegistryError> {
                #(__registry.register::<#field_types>()?;)*
                ::std::result::Result::Ok(())
            }
        }
    })
}
