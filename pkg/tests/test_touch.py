import pytest

from modules.touch import FaceTouches, TouchError


@pytest.fixture
def owner():
    return list(range(4))


@pytest.fixture
def touches(owner):
    return FaceTouches([6, 3], lambda key: owner[key])


def spans(touches, face, key):
    return sorted((piece.lo, piece.size) for piece in touches.current(face, key))


def test_link_and_unlink_adjacent_positions(touches):
    touches.add(0, 2, 1)
    touches.add(0, 3, 1)
    touches.link(0, 2, 1)
    assert spans(touches, 0, 1) == [(2, 2)]
    touches.unlink(0, 2, 1)
    assert spans(touches, 0, 1) == [(2, 1), (3, 1)]
    touches.remove(0, 3, 1)
    assert spans(touches, 0, 1) == [(2, 1)]


def test_pieces_wrap_around_the_orbit(touches):
    touches.add(0, 5, 1)
    touches.add(0, 0, 1)
    touches.link(0, 5, 1)
    piece, = touches.current(0, 1)
    assert (piece.lo, piece.size) == (5, 2)
    assert touches.hi(0, piece) == 0


def test_misuse_is_rejected(touches):
    touches.add(1, 0, 1)
    with pytest.raises(TouchError):
        touches.add(1, 0, 1)
    with pytest.raises(TouchError):
        touches.link(1, 0, 1)
    touches.add(1, 1, 1)
    touches.link(1, 0, 1)
    with pytest.raises(TouchError):
        touches.remove(1, 0, 1)
    with pytest.raises(TouchError):
        touches.unlink(1, 1, 1)


def test_adopted_pieces_count_for_the_new_holder(touches, owner):
    touches.add(0, 1, 1)
    touches.add(0, 4, 2)
    assert touches.foreign(0, 1) == [2]
    assert spans(touches, 0, 1) == [(1, 1)]
    owner[2] = 1
    assert touches.foreign(0, 1) == []
    assert spans(touches, 0, 1) == [(1, 1), (4, 1)]
