"""
A workspace: one group, its loaded tables and a registry of named modules.

Module names understood by ``Workspace.module``:

- ``R`` the representation Green functor as a module over itself;
- ``Bur`` the Burnside Green functor as a module over itself;
- ``0`` the zero module;
- ``R[<gset>]`` the representable module of a G-set literal;
- a registered name, or a path to a module JSON file.

G-set literals are sums (``+``, disjoint union) of products (``*``) of
orbits ``G/1``, ``G/G``, ``G/<i,j,...>`` (the subgroup generated by the listed
element indices) and ``G/H<k>`` (the representative of subgroup class k);
``pt`` is G/G, ``0`` the empty G-set, and parentheses group.
"""

from __future__ import annotations

import logging
import os
import re

from .config import WorkspaceConfig
from .constructions import representable, representation_module
from .errors import InputError
from .formats import load_module
from .groups import FiniteGroup, Subgroup, preset
from .gsets import GSet, coset_space, disjoint_union, empty, point, product
from .mackey import GradedMackeyModule, MackeyModule, zero_module

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(G/<[^>]*>|G/H<\d+>|G/1|G/G|pt|0|\(|\)|\+|\*)")


class Workspace:
    def __init__(self, config: WorkspaceConfig, group: FiniteGroup | None = None):
        config.validate()
        self.config = config
        self.group = group or preset(config.group_spec, max_order=config.max_order, seed=config.choice_seed)
        self.group.table_cache_dir = config.cache_dir
        self.output_dir = config.output_dir
        self.modules: dict[str, GradedMackeyModule] = {}
        logger.info("workspace over %s (order %d)", self.group.name, self.group.order)

    # -- subgroups and G-sets ---------------------------------------------------

    def subgroup(self, text: str) -> Subgroup:
        text = text.strip()
        lattice = self.group.lattice
        if text == "1":
            return self.group.trivial
        if text == "G":
            return self.group.whole
        match = re.fullmatch(r"H<(\d+)>", text)
        if match:
            index = int(match.group(1))
            if index >= len(lattice.classes):
                raise InputError(f"Subgroup class H<{index}> does not exist; there are {len(lattice.classes)} classes.")
            return lattice.classes[index].representative
        match = re.fullmatch(r"<([\d,\s]*)>", text)
        if match:
            try:
                generators = [int(x) for x in match.group(1).split(",") if x.strip()]
            except ValueError:
                raise InputError(f"Bad subgroup generators in {text!r}.") from None
            return self.group.generated_subgroup(generators)
        raise InputError(f"Unknown subgroup {text!r}; use 1, G, H<k> or <i,j,...>.")

    def gset(self, text: str) -> GSet:
        tokens = self._tokenize(text)
        position, result = self._parse_sum(tokens, 0, text)
        if position != len(tokens):
            raise InputError(f"Unexpected {tokens[position]!r} in G-set literal {text!r}.")
        return result

    def _tokenize(self, text: str) -> list[str]:
        tokens = []
        index = 0
        stripped = text.rstrip()
        while index < len(stripped):
            match = _TOKEN.match(stripped, index)
            if not match:
                raise InputError(f"Cannot read G-set literal {text!r} at position {index}.")
            tokens.append(match.group(1))
            index = match.end()
        if not tokens:
            raise InputError("Empty G-set literal.")
        return tokens

    def _parse_sum(self, tokens: list[str], position: int, text: str) -> tuple[int, GSet]:
        position, result = self._parse_product(tokens, position, text)
        while position < len(tokens) and tokens[position] == "+":
            position, right = self._parse_product(tokens, position + 1, text)
            result = disjoint_union(result, right)
        return position, result

    def _parse_product(self, tokens: list[str], position: int, text: str) -> tuple[int, GSet]:
        position, result = self._parse_atom(tokens, position, text)
        while position < len(tokens) and tokens[position] == "*":
            position, right = self._parse_atom(tokens, position + 1, text)
            result = product(result, right)
        return position, result

    def _parse_atom(self, tokens: list[str], position: int, text: str) -> tuple[int, GSet]:
        if position >= len(tokens):
            raise InputError(f"G-set literal {text!r} ends unexpectedly.")
        token = tokens[position]
        if token == "(":
            position, inner = self._parse_sum(tokens, position + 1, text)
            if position >= len(tokens) or tokens[position] != ")":
                raise InputError(f"Unbalanced parentheses in G-set literal {text!r}.")
            return position + 1, inner
        if token == "pt":
            return position + 1, point(self.group)
        if token == "0":
            return position + 1, empty(self.group)
        if token.startswith("G/"):
            return position + 1, coset_space(self.group, self.subgroup(token[2:]))
        raise InputError(f"Unexpected {token!r} in G-set literal {text!r}.")

    # -- modules --------------------------------------------------------------------

    def register(self, name: str, module: MackeyModule | GradedMackeyModule) -> GradedMackeyModule:
        graded = module if isinstance(module, GradedMackeyModule) else GradedMackeyModule.concentrated(module, 0)
        self.modules[name] = graded
        return graded

    def module(self, name: str) -> GradedMackeyModule:
        name = name.strip()
        if name in self.modules:
            return self.modules[name]
        if name == "R":
            found = representation_module(self.group)
        elif name == "Bur":
            found = representation_module(self.group, "burnside")
        elif name == "0":
            found = zero_module(self.group)
        elif name.startswith("R[") and name.endswith("]"):
            found = representable(self.group, self.gset(name[2:-1]))
        elif name.endswith(".json") or os.path.isfile(name):
            if not os.path.isfile(name):
                raise InputError(f"Module file not found: {name}")
            return self.register(name, load_module(name, self.group))
        else:
            raise InputError(f"Unknown module {name!r}; use R, Bur, 0, R[<gset>] or a module JSON file.")
        return self.register(name, found)

    def ungraded(self, name: str) -> MackeyModule:
        """
        The module behind ``name``, which must be concentrated in degree 0.
        """
        graded = self.module(name)
        if not graded.odd.is_zero():
            raise InputError(f"{name} has an odd component; this command needs an ungraded module.")
        return graded.even

    def output_path(self, filename: str) -> str | None:
        if not self.output_dir:
            return None
        return os.path.join(self.output_dir, filename)
