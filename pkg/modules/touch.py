"""Where the current paths touch each face.

A path touches face f at a corner: an orbit position p whose tail vertex lies
on the path with the corner inside the path's right wedge. Consecutive touched
positions p and p+1 are joined when the dart at p, reversed, is a path dart.
A piece is a maximal run of joined positions; one path meets f in a connected
subpath exactly when it owns a single piece there.

Pieces are tagged with the pair that created them. ``owner`` maps a tag to the
pair currently holding it, so pieces of a finished child count as its
parent's once the parent adopts the child.
"""
from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence

from modules.plane_graph import NcspError


class TouchError(NcspError):
    pass


class Piece:
    __slots__ = ("key", "lo", "size")

    def __init__(self, key: int, lo: int, size: int):
        self.key = key
        self.lo = lo
        self.size = size

    def __repr__(self) -> str:
        return f"Piece(key={self.key}, lo={self.lo}, size={self.size})"


class FaceTouches:
    def __init__(self, lengths: Sequence[int], owner: Callable[[int], int]):
        self.lengths = lengths
        self.owner = owner
        self.pieces: Dict[int, List[Piece]] = {}

    def hi(self, face: int, piece: Piece) -> int:
        return (piece.lo + piece.size - 1) % self.lengths[face]

    def current(self, face: int, key: int) -> List[Piece]:
        holder = self.owner(key)
        return [p for p in self.pieces.get(face, ()) if self.owner(p.key) == holder]

    def foreign(self, face: int, key: int) -> List[int]:
        """Holders other than ``key``'s that own pieces on ``face``."""
        holder = self.owner(key)
        return [h for h in {self.owner(p.key) for p in self.pieces.get(face, ())} if h != holder]

    def _containing(self, face: int, key: int, position: int) -> Optional[Piece]:
        length = self.lengths[face]
        for piece in self.current(face, key):
            if (position - piece.lo) % length < piece.size:
                return piece
        return None

    def add(self, face: int, position: int, key: int) -> None:
        if self._containing(face, key, position) is not None:
            raise TouchError(f"position {position} of face {face} is already touched")
        self.pieces.setdefault(face, []).append(Piece(key, position, 1))

    def remove(self, face: int, position: int, key: int) -> None:
        piece = self._containing(face, key, position)
        if piece is None or piece.size != 1:
            raise TouchError(f"position {position} of face {face} is not a lone touch")
        pieces = self.pieces[face]
        pieces.remove(piece)
        if not pieces:
            del self.pieces[face]

    def link(self, face: int, position: int, key: int) -> None:
        """Joins the piece ending at ``position`` with the one starting right after it."""
        length = self.lengths[face]
        lower = upper = None
        for piece in self.current(face, key):
            if self.hi(face, piece) == position:
                lower = piece
            if piece.lo == (position + 1) % length:
                upper = piece
        if lower is None or upper is None or lower is upper:
            raise TouchError(f"cannot join face {face} across position {position}")
        lower.size += upper.size
        self.pieces[face].remove(upper)

    def unlink(self, face: int, position: int, key: int) -> None:
        """Splits the piece holding ``position`` and ``position + 1``."""
        length = self.lengths[face]
        piece = self._containing(face, key, position)
        offset = None if piece is None else (position - piece.lo) % length
        if offset is None or offset >= piece.size - 1:
            raise TouchError(f"face {face} is not joined across position {position}")
        self.pieces[face].append(Piece(piece.key, (position + 1) % length, piece.size - offset - 1))
        piece.size = offset + 1
