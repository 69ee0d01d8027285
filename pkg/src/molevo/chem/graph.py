"""Attributed molecular graph: atoms, bonds, perceived rings, implicit hydrogens.

``MolGraph`` instances are immutable after construction and safe to share
across threads.  Construction validates valences, fills implicit hydrogens,
perceives rings (smallest set of smallest rings), and checks that every
aromatic atom sits on a ring whose atoms and bonds are all aromatic.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..errors import ValenceError
from .elements import (
    AROMATIC_BOND_CAP,
    AROMATIC_ELEMENTS,
    AROMATIC_H_BASE,
    ATOMIC_MASS,
    SUPPORTED_ELEMENTS,
    allowed_valences,
    max_valence,
)


@dataclass(frozen=True)
class Atom:
    element: str
    formal_charge: int = 0
    aromatic: bool = False
    explicit_h: int | None = None  # None: fill implicitly


@dataclass(frozen=True)
class Bond:
    a: int
    b: int
    order: int = 1  # 1, 2, 3; aromatic bonds carry order 1
    aromatic: bool = False

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a


def find_rings(n_atoms: int, endpoints: list[tuple[int, int]]) -> list[list[int]]:
    """Smallest set of smallest rings, as lists of bond indices.

    For each bond, the shortest cycle through it is found by BFS with the
    bond removed; candidates are then picked smallest-first subject to
    GF(2) independence until ``bonds - atoms + components`` rings are kept.
    """
    if n_atoms == 0 or not endpoints:
        return []
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n_atoms)]
    for idx, (u, v) in enumerate(endpoints):
        adj[u].append((v, idx))
        adj[v].append((u, idx))

    seen = [False] * n_atoms
    components = 0
    for start in range(n_atoms):
        if seen[start]:
            continue
        components += 1
        stack = [start]
        seen[start] = True
        while stack:
            u = stack.pop()
            for v, _ in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
    n_rings = len(endpoints) - n_atoms + components
    if n_rings <= 0:
        return []

    candidates: list[tuple[int, int]] = []  # (size, bond mask)
    masks_seen: set[int] = set()
    for idx, (u, v) in enumerate(endpoints):
        # shortest u..v path avoiding this bond
        prev: dict[int, tuple[int, int]] = {u: (-1, -1)}
        queue = [u]
        found = False
        while queue and not found:
            nxt: list[int] = []
            for x in queue:
                for y, bidx in adj[x]:
                    if bidx == idx or y in prev:
                        continue
                    prev[y] = (x, bidx)
                    if y == v:
                        found = True
                        break
                    nxt.append(y)
                if found:
                    break
            queue = nxt
        if not found:
            continue
        mask = 1 << idx
        size = 1
        node = v
        while node != u:
            node, bidx = prev[node]
            mask |= 1 << bidx
            size += 1
        if mask not in masks_seen:
            masks_seen.add(mask)
            candidates.append((size, mask))

    candidates.sort(key=lambda t: (t[0], t[1]))
    basis: list[int] = []  # row-echelon masks
    chosen: list[int] = []
    for _, mask in candidates:
        if len(chosen) == n_rings:
            break
        reduced = mask
        for row in basis:
            low = row & -row
            if reduced & low:
                reduced ^= row
        if reduced:
            basis.append(reduced)
            basis.sort(key=lambda m: m & -m)
            chosen.append(mask)
    rings = []
    for mask in chosen:
        rings.append([i for i in range(len(endpoints)) if mask >> i & 1])
    return rings


def repair_aromatics(
    atoms: list[Atom], bonds: list[Bond]
) -> tuple[list[Atom], list[Bond]]:
    """Demote aromatic flags not backed by a fully-aromatic perceived ring.

    Used by the SELFIES decoder to keep totality: partially derived aromatic
    systems (unclosed rings, truncated branches) become plain single-bonded
    atoms instead of invalid graphs.
    """
    ring_bond_lists = find_rings(len(atoms), [(b.a, b.b) for b in bonds])
    aromatic_bond_ok: set[int] = set()
    for bond_ids in ring_bond_lists:
        if all(bonds[i].aromatic for i in bond_ids):
            aromatic_bond_ok.update(bond_ids)
    aromatic_atom_ok: set[int] = set()
    for bidx in aromatic_bond_ok:
        aromatic_atom_ok.add(bonds[bidx].a)
        aromatic_atom_ok.add(bonds[bidx].b)
    new_bonds = []
    for idx, bond in enumerate(bonds):
        if bond.aromatic and idx not in aromatic_bond_ok:
            new_bonds.append(replace(bond, aromatic=False, order=1))
        else:
            new_bonds.append(bond)
    new_atoms = []
    for idx, atom in enumerate(atoms):
        if atom.aromatic and idx not in aromatic_atom_ok:
            new_atoms.append(replace(atom, aromatic=False))
        else:
            new_atoms.append(atom)
    return new_atoms, new_bonds


class MolGraph:
    """Immutable molecular graph with perceived rings and hydrogen counts."""

    __slots__ = (
        "atoms",
        "bonds",
        "rings",
        "ring_bonds",
        "hydrogens",
        "is_mixture",
        "_adj",
        "_bond_index",
        "_ring_atoms",
    )

    def __init__(self, atoms: list[Atom], bonds: list[Bond], validate: bool = True):
        self.atoms: tuple[Atom, ...] = tuple(atoms)
        self.bonds: tuple[Bond, ...] = tuple(bonds)
        n = len(self.atoms)
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        bond_index: dict[tuple[int, int], int] = {}
        for idx, bond in enumerate(self.bonds):
            if bond.a == bond.b:
                raise ValueError(f"self-bond on atom {bond.a}")
            if not (0 <= bond.a < n and 0 <= bond.b < n):
                raise ValueError("bond endpoint out of range")
            key = (min(bond.a, bond.b), max(bond.a, bond.b))
            if key in bond_index:
                raise ValueError(f"duplicate bond between atoms {key}")
            bond_index[key] = idx
            adj[bond.a].append((bond.b, idx))
            adj[bond.b].append((bond.a, idx))
        self._adj = tuple(tuple(x) for x in adj)
        self._bond_index = bond_index

        ring_bond_lists = find_rings(n, [(b.a, b.b) for b in self.bonds])
        self.ring_bonds: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(ids)) for ids in ring_bond_lists
        )
        rings_atoms: list[tuple[int, ...]] = []
        for bond_ids in self.ring_bonds:
            members: set[int] = set()
            for bidx in bond_ids:
                members.add(self.bonds[bidx].a)
                members.add(self.bonds[bidx].b)
            rings_atoms.append(tuple(sorted(members)))
        self.rings: tuple[tuple[int, ...], ...] = tuple(rings_atoms)
        ring_atoms: set[int] = set()
        for ring in self.rings:
            ring_atoms.update(ring)
        self._ring_atoms = frozenset(ring_atoms)

        self.is_mixture = self._component_count() > 1
        self.hydrogens = tuple(self._fill_hydrogens(i) for i in range(n))
        if validate:
            self._validate()

    # -- construction helpers --------------------------------------------------

    def _bond_order_sum(self, idx: int) -> int:
        total = 0
        for _, bidx in self._adj[idx]:
            bond = self.bonds[bidx]
            total += 1 if bond.aromatic else bond.order
        return total

    def _fill_hydrogens(self, idx: int) -> int:
        atom = self.atoms[idx]
        used = self._bond_order_sum(idx)
        if atom.explicit_h is not None:
            return atom.explicit_h
        if atom.aromatic:
            base = AROMATIC_H_BASE.get(atom.element, 0)
            return max(0, base - used)
        for v in allowed_valences(atom.element, atom.formal_charge):
            if v >= used:
                return v - used
        return 0

    def _validate(self) -> None:
        aromatic_ok: set[int] = set()
        for bond_ids in self.ring_bonds:
            if all(self.bonds[b].aromatic for b in bond_ids):
                for b in bond_ids:
                    aromatic_ok.add(self.bonds[b].a)
                    aromatic_ok.add(self.bonds[b].b)
        for idx, atom in enumerate(self.atoms):
            if atom.element not in SUPPORTED_ELEMENTS:
                raise ValenceError(f"unsupported element {atom.element!r}")
            used = self._bond_order_sum(idx)
            total = used + self.hydrogens[idx]
            if atom.aromatic:
                if atom.element not in AROMATIC_ELEMENTS:
                    raise ValenceError(f"{atom.element} cannot be aromatic")
                if idx not in aromatic_ok:
                    raise ValenceError(
                        f"aromatic atom {idx} ({atom.element}) not on an aromatic ring"
                    )
                if used > AROMATIC_BOND_CAP[atom.element]:
                    raise ValenceError(
                        f"aromatic {atom.element} atom {idx} carries {used} bonds"
                    )
                if total > max_valence(atom.element, atom.formal_charge):
                    raise ValenceError(
                        f"aromatic {atom.element} atom {idx}: valence {total} too high"
                    )
            else:
                cap = max_valence(atom.element, atom.formal_charge)
                if total > cap:
                    raise ValenceError(
                        f"{atom.element} atom {idx}: valence {total} exceeds {cap}"
                    )
        for bond in self.bonds:
            if bond.aromatic and not (
                self.atoms[bond.a].aromatic and self.atoms[bond.b].aromatic
            ):
                raise ValenceError("aromatic bond between non-aromatic atoms")

    def _component_count(self) -> int:
        n = len(self.atoms)
        if n == 0:
            return 0
        seen = [False] * n
        count = 0
        for start in range(n):
            if seen[start]:
                continue
            count += 1
            stack = [start]
            seen[start] = True
            while stack:
                u = stack.pop()
                for v, _ in self._adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
        return count

    # -- queries ----------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.atoms)

    @property
    def heavy_atom_count(self) -> int:
        return len(self.atoms)

    def neighbors(self, idx: int) -> tuple[tuple[int, int], ...]:
        """(neighbor atom index, bond index) pairs."""
        return self._adj[idx]

    def degree(self, idx: int) -> int:
        return len(self._adj[idx])

    def bond_between(self, a: int, b: int) -> Bond | None:
        idx = self._bond_index.get((min(a, b), max(a, b)))
        return self.bonds[idx] if idx is not None else None

    def total_h(self, idx: int) -> int:
        return self.hydrogens[idx]

    def in_ring(self, idx: int) -> bool:
        return idx in self._ring_atoms

    def bond_idx_in_ring(self, bidx: int) -> bool:
        return any(bidx in ids for ids in self.ring_bonds)

    def smallest_ring_size(self, idx: int) -> int:
        sizes = [len(r) for r in self.rings if idx in r]
        return min(sizes) if sizes else 0

    def ring_count(self) -> int:
        return len(self.rings)

    def aromatic_rings(self) -> list[tuple[int, ...]]:
        """Perceived rings whose every bond is aromatic."""
        out = []
        for bond_ids, atoms in zip(self.ring_bonds, self.rings):
            if all(self.bonds[b].aromatic for b in bond_ids):
                out.append(atoms)
        return out

    def molecular_weight(self) -> float:
        total = 0.0
        for idx, atom in enumerate(self.atoms):
            total += ATOMIC_MASS[atom.element]
            total += ATOMIC_MASS["H"] * self.hydrogens[idx]
        return total

    def components(self) -> list[list[int]]:
        n = len(self.atoms)
        seen = [False] * n
        comps = []
        for start in range(n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = [start]
            while stack:
                u = stack.pop()
                for v, _ in self._adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        comp.append(v)
                        stack.append(v)
            comps.append(sorted(comp))
        return comps

    def subgraph(self, atom_indices: list[int], sanitize: bool = True) -> "MolGraph":
        """Graph induced on ``atom_indices``; hydrogens refill on open valences.

        With ``sanitize`` the aromatic flags of atoms/bonds that lost their
        ring are demoted so the result always validates.
        """
        keep = sorted(set(atom_indices))
        remap = {old: new for new, old in enumerate(keep)}
        atoms = [self.atoms[i] for i in keep]
        bonds = []
        for bond in self.bonds:
            if bond.a in remap and bond.b in remap:
                bonds.append(
                    Bond(remap[bond.a], remap[bond.b], bond.order, bond.aromatic)
                )
        if sanitize:
            atoms, bonds = repair_aromatics(atoms, bonds)
        return MolGraph(atoms, bonds)

    def node_key(self, idx: int) -> tuple:
        atom = self.atoms[idx]
        return (atom.element, atom.formal_charge, atom.aromatic, self.hydrogens[idx])

    def __repr__(self) -> str:  # pragma: no cover - debug aid
        return (
            f"MolGraph(atoms={len(self.atoms)}, bonds={len(self.bonds)}, "
            f"rings={len(self.rings)})"
        )


def empty_graph() -> MolGraph:
    return MolGraph([], [])
