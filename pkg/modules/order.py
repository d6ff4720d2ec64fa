"""Order-maintained doubly linked list.

Every node carries an integer label that grows along the list, so two nodes
are compared in O(1). Inserting into a full gap relabels the smallest aligned
label window around the anchor that is sparse enough; windows get sparser
exponentially with their size, which keeps inserts amortized O(log n).
"""
from __future__ import annotations

from typing import Iterator, Optional

LABEL_LIMIT = 1 << 62
LABEL_STEP = 1 << 24
# a window of 2**level labels may hold at most DENSITY**level nodes
DENSITY = 4 / 3


class OrderNode:
    __slots__ = ("label", "prev", "next")

    def __init__(self) -> None:
        self.label = -1
        self.prev: Optional[OrderNode] = None
        self.next: Optional[OrderNode] = None


class OrderList:
    def __init__(self) -> None:
        self.head: Optional[OrderNode] = None
        self.tail: Optional[OrderNode] = None
        self.size = 0
        self.relabels = 0

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[OrderNode]:
        node = self.head
        while node is not None:
            yield node
            node = node.next

    @staticmethod
    def precedes(a: OrderNode, b: OrderNode) -> bool:
        return a.label < b.label

    def insert_after(self, anchor: Optional[OrderNode], node: OrderNode) -> None:
        """Links ``node`` right after ``anchor``, or at the front when anchor is None."""
        if node.prev is not None or node.next is not None or node is self.head:
            raise ValueError("node is already linked")
        following = self.head if anchor is None else anchor.next
        self._link(anchor, node, following)

    def insert_before(self, anchor: Optional[OrderNode], node: OrderNode) -> None:
        """Links ``node`` right before ``anchor``, or at the end when anchor is None."""
        if node.prev is not None or node.next is not None or node is self.head:
            raise ValueError("node is already linked")
        previous = self.tail if anchor is None else anchor.prev
        self._link(previous, node, anchor)

    def unlink(self, node: OrderNode) -> None:
        if node.prev is not None:
            node.prev.next = node.next
        else:
            self.head = node.next
        if node.next is not None:
            node.next.prev = node.prev
        else:
            self.tail = node.prev
        node.prev = node.next = None
        self.size -= 1

    def _link(self, previous: Optional[OrderNode], node: OrderNode, following: Optional[OrderNode]) -> None:
        low = previous.label if previous is not None else -1
        high = following.label if following is not None else LABEL_LIMIT
        if high - low < 2:
            self._rebalance(previous if previous is not None else following)
            low = previous.label if previous is not None else -1
            high = following.label if following is not None else LABEL_LIMIT
        node.label = low + min(LABEL_STEP, (high - low) // 2)
        node.prev, node.next = previous, following
        if previous is not None:
            previous.next = node
        else:
            self.head = node
        if following is not None:
            following.prev = node
        else:
            self.tail = node
        self.size += 1

    def _rebalance(self, anchor: OrderNode) -> None:
        self.relabels += 1
        first = last = anchor
        count = 1
        for level in range(1, 63):
            width = 1 << level
            base = anchor.label & ~(width - 1)
            while first.prev is not None and first.prev.label >= base:
                first = first.prev
                count += 1
            while last.next is not None and last.next.label < base + width:
                last = last.next
                count += 1
            if 2 * (count + 1) <= width and count <= DENSITY ** level:
                self._spread(first, count, base, width)
                return
        self._spread(self.head, self.size, 0, LABEL_LIMIT)

    @staticmethod
    def _spread(first: OrderNode, count: int, base: int, width: int) -> None:
        spacing = width // (count + 1)
        node = first
        for index in range(1, count + 1):
            node.label = base + index * spacing
            node = node.next
