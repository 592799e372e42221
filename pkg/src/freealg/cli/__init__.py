"""Text front end: expression parser and certificate-emitting subcommands."""

from .certificates import verify
from .main import build_parser, main
from .parser import Alphabet, ExprAst, ParseError, format_poly, parse, parse_ast, split_top_level, tokenize

__all__ = ["verify", "build_parser", "main", "Alphabet", "ExprAst", "ParseError", "format_poly",
           "parse", "parse_ast", "split_top_level", "tokenize"]
