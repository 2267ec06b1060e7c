"""Words in the simple reflections of S_{r+1}, braid and commutation moves, and
Lusztig's transition maps between Whitney-Lusztig charts.

A word is stored as written, ``(i_m, ..., i_1)``. Chart parameters are listed in
application order, ``params[0] = c_1`` belonging to the rightmost letter, so a
letter-level move at written positions ``p, p+1(, p+2)`` acts on the parameter
positions counted from the other end (see ``param_position``).

The S_4 hexagon diagram is written the other way round: its labels ``R(j)``, ``L(i)``
refer to parameters listed parallel to the written letters, which is what
``parallel_chart`` evaluates.
"""
import re
from collections import deque, namedtuple
from functools import lru_cache
from itertools import permutations

from wronski.algebra.exactpoly import to_rational
from wronski.errors import NoPathError, PoleError, RankTooLargeError, UsageError
from .cells import chart

MAX_ENUM_RANK = 4


class Word(object):
    __slots__ = ('letters', 'rank')

    def __init__(self, letters, rank):
        letters = tuple(int(i) for i in letters)
        if rank < 1:
            raise UsageError('rank must be >= 1')
        bad = [i for i in letters if not 1 <= i <= rank]
        if bad:
            raise UsageError(f'letters {bad} out of range 1..{rank}')
        self.letters = letters
        self.rank = rank

    @classmethod
    def parse(cls, text, rank):
        """``'121321'``, ``'1,2,1'`` or ``''`` (the empty word)."""
        text = (text or '').strip()
        if not text:
            return cls((), rank)
        parts = text.split(',') if ',' in text else list(text)
        try:
            return cls([int(p) for p in parts], rank)
        except ValueError:
            raise UsageError(f'malformed word {text!r}')

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, Word) and (self.letters, self.rank) == (other.letters, other.rank)

    def __lt__(self, other):
        return self.letters < other.letters

    def __hash__(self):
        return hash((self.letters, self.rank))

    def __str__(self):
        sep = '' if self.rank < 10 else ','
        return sep.join(str(i) for i in self.letters)

    def __repr__(self):
        return f'Word({self})'


class Permutation(object):
    __slots__ = ('images',)

    def __init__(self, images):
        images = tuple(int(k) for k in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise UsageError(f'{images} is not a permutation')
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def longest(cls, rank):
        return cls(range(rank + 1, 0, -1))

    @property
    def length(self):
        w = self.images
        return sum(1 for a in range(len(w)) for b in range(a + 1, len(w)) if w[a] > w[b])

    def right_multiply(self, i):
        """``w * s_i``: swaps the values at positions i and i+1."""
        w = list(self.images)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(w)

    def descents(self):
        w = self.images
        return [i for i in range(1, len(w)) if w[i - 1] > w[i]]

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f'Permutation{self.images}'


def as_params(values):
    return tuple(to_rational(v) for v in values)


def word_to_perm(word):
    w = Permutation.identity(word.rank + 1)
    for i in word.letters:
        w = w.right_multiply(i)
    return w


def is_reduced(word):
    return len(word) == word_to_perm(word).length


@lru_cache(maxsize=None)
def _reduced_words(images):
    w = Permutation(images)
    if w.length == 0:
        return ((),)
    words = []
    for i in w.descents():
        for prefix in _reduced_words(w.right_multiply(i).images):
            words.append(prefix + (i,))
    return tuple(sorted(words))


def reduced_words(perm, rank):
    return tuple(Word(letters, rank) for letters in _reduced_words(perm.images))


def reduced_words_of_longest(rank, max_rank=None):
    max_rank = MAX_ENUM_RANK if max_rank is None else max_rank
    if rank > max_rank:
        raise RankTooLargeError(f'reduced-word enumeration is capped at rank {max_rank}')
    return reduced_words(Permutation.longest(rank), rank)


def shifted_degree_action(word):
    k = [0] * (word.rank + 2)
    for i in reversed(word.letters):
        k[i] = k[i - 1] + k[i + 1] - k[i] + 1
    return tuple(k[1:-1])


def braid_move_R(params, j):
    a = list(as_params(params))
    if not 1 <= j <= len(a) - 2:
        raise UsageError(f'braid position {j} out of range 1..{len(a) - 2}')
    a1, a2, a3 = a[j - 1:j + 2]
    s = a1 + a3
    if not s:
        raise PoleError(j, (a1, a2, a3))
    a[j - 1:j + 2] = [a2 * a3 / s, s, a1 * a2 / s]
    return tuple(a)


def commute_move_L(params, i):
    a = list(as_params(params))
    if not 1 <= i <= len(a) - 1:
        raise UsageError(f'swap position {i} out of range 1..{len(a) - 1}')
    a[i - 1], a[i] = a[i], a[i - 1]
    return tuple(a)


Move = namedtuple('Move', ['kind', 'position', 'source', 'target'])


def apply_move(params, label):
    kind, position = label
    if kind == 'R':
        return braid_move_R(params, position)
    if kind == 'L':
        return commute_move_L(params, position)
    raise UsageError(f'unknown move {label!r}')


def param_position(kind, p, m):
    """Parameter position (1-based) touched by a move at written letter position ``p`` (0-based)."""
    return m - p - 2 if kind == 'R' else m - p - 1


def letter_moves(letters):
    """Braid and commutation moves applicable to a written word, ordered by (position, kind)."""
    moves = []
    m = len(letters)
    for p in range(m - 1):
        a, b = letters[p], letters[p + 1]
        if abs(a - b) > 1:
            target = letters[:p] + (b, a) + letters[p + 2:]
            moves.append((p, 'L', target))
        if p + 2 < m and letters[p + 2] == a and abs(a - b) == 1:
            target = letters[:p] + (b, a, b) + letters[p + 3:]
            moves.append((p, 'R', target))
    moves.sort(key=lambda move: (move[0], move[1]))
    return moves


def move_path(h, h2):
    """Shortest move sequence from ``h`` to ``h2``, lexicographically smallest among those."""
    if h.rank != h2.rank or not is_reduced(h) or not is_reduced(h2) or word_to_perm(h) != word_to_perm(h2):
        raise NoPathError(f'{h} and {h2} are not reduced words of the same permutation')
    start, goal = h.letters, h2.letters
    parents = {start: None}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        if current == goal:
            break
        for p, kind, target in letter_moves(current):
            if target not in parents:
                parents[target] = (current, p, kind)
                queue.append(target)
    if goal not in parents:
        raise NoPathError(f'no move path from {h} to {h2}')

    path = []
    node = goal
    m = len(goal)
    while parents[node] is not None:
        prev, p, kind = parents[node]
        path.append(Move(kind, param_position(kind, p, m), Word(prev, h.rank), Word(node, h.rank)))
        node = prev
    return path[::-1]


def transition_map(h, h2, params):
    params = as_params(params)
    if len(params) != len(h):
        raise UsageError(f'{len(h)} letters but {len(params)} parameters')
    for move in move_path(h, h2):
        params = apply_move(params, (move.kind, move.position))
    return params


def parallel_chart(word, params):
    """Chart with parameters listed parallel to the written letters (leftmost factor first)."""
    return chart(word, tuple(reversed(as_params(params))), word.rank)


Permutohedron = namedtuple('Permutohedron', ['vertices', 'edges', 'words', 'classes', 'octagon'])


def commutation_classes(words):
    words = sorted(words)
    index = {w.letters: k for k, w in enumerate(words)}
    parent = list(range(len(words)))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for w in words:
        for p, kind, target in letter_moves(w.letters):
            if kind == 'L' and target in index:
                a, b = find(index[w.letters]), find(index[target])
                if a != b:
                    parent[max(a, b)] = min(a, b)
    groups = {}
    for k, w in enumerate(words):
        groups.setdefault(find(k), []).append(w)
    return sorted((tuple(g) for g in groups.values()), key=lambda g: g[0])


def class_of(word, classes):
    for k, cls in enumerate(classes):
        if word in cls:
            return k
    raise UsageError(f'{word} belongs to no class')


def braid_adjacency(classes):
    adjacency = {k: set() for k in range(len(classes))}
    for k, cls in enumerate(classes):
        for w in cls:
            for p, kind, target in letter_moves(w.letters):
                if kind == 'R':
                    other = class_of(Word(target, w.rank), classes)
                    if other != k:
                        adjacency[k].add(other)
    return adjacency


def octagon_order(classes):
    """Classes listed around the cycle of braid-move adjacencies, starting from the first class."""
    adjacency = braid_adjacency(classes)
    order = [0]
    while len(order) < len(classes):
        candidates = sorted(adjacency[order[-1]] - set(order))
        if not candidates:
            break
        order.append(candidates[0])
    return tuple(order)


@lru_cache(maxsize=None)
def permutohedron_S4():
    rank = 3
    vertices = tuple(Permutation(p) for p in permutations(range(1, rank + 2)))
    edges = []
    for w in vertices:
        for i in range(1, rank + 1):
            v = w.right_multiply(i)
            if v.length == w.length + 1:
                edges.append((w, v, i))
    words = reduced_words_of_longest(rank)
    classes = commutation_classes(words)
    return Permutohedron(vertices, tuple(edges), words, tuple(classes), octagon_order(classes))


def parse_composite(text):
    """``'L(3)R(1)'`` -> labels in application order (rightmost first)."""
    labels = [(kind, int(pos)) for kind, pos in re.findall(r'([LR])\((\d+)\)', text)]
    if not labels or ''.join(f'{k}({p})' for k, p in labels) != text.replace(' ', ''):
        raise UsageError(f'malformed composite {text!r}')
    return labels[::-1]


def apply_composite(params, text):
    params = as_params(params)
    for label in parse_composite(text):
        params = apply_move(params, label)
    return params


# Edges (source, label, target) of the S_4 hexagon diagram, labels against parallel parameters.
HEXAGON_DIAGRAM = (
    ('121321', 'R(1)', '212321'),
    ('212321', 'R(3)', '213231'),
    ('213231', 'L(2)', '231231'),
    ('231231', 'L(5)', '231213'),
    ('231213', 'R(3)', '232123'),
    ('232123', 'R(1)', '323123'),
    ('323123', 'L(3)', '321323'),
    ('121321', 'L(3)', '123121'),
    ('123121', 'R(4)', '123212'),
    ('123212', 'R(2)', '132312'),
    ('132312', 'L(4)', '132132'),
    ('132132', 'L(1)', '312132'),
    ('312132', 'R(2)', '321232'),
    ('321232', 'R(4)', '321323'),
)
DIAGRAM_START, DIAGRAM_END = '121321', '321323'

UPPER_COMPOSITE = 'L(3)R(1)R(3)L(2)L(5)R(3)R(1)'
LOWER_COMPOSITE = 'R(4)R(2)L(1)L(4)R(2)R(4)L(3)'

TETRAHEDRON_FACTORS = {
    ('R1', 1): 'R(1)', ('R2', 1): 'L(3)R(1)',
    ('R1', 2): 'L(4)R(2)', ('R2', 2): 'R(2)L(1)',
    ('R1', 3): 'L(5)R(3)', ('R2', 3): 'R(3)L(2)',
    ('R1', 4): 'R(4)L(3)', ('R2', 4): 'R(4)',
}
TETRAHEDRON_LEFT = (('R2', 1), ('R2', 3), ('R1', 3), ('R1', 1))
TETRAHEDRON_RIGHT = (('R2', 4), ('R2', 2), ('R1', 2), ('R1', 4))


def diagram_consistency(params):
    """``parallel_chart(h, a) == parallel_chart(h', m(a))`` along every edge of the hexagon diagram."""
    params = as_params(params)
    results = []
    for source, label, target in HEXAGON_DIAGRAM:
        moved = apply_composite(params, label)
        same = parallel_chart(Word.parse(source, 3), params) == parallel_chart(Word.parse(target, 3), moved)
        results.append((source, label, target, same))
    return results


def theorem_composites_check(params):
    params = as_params(params)
    return apply_composite(params, UPPER_COMPOSITE) == apply_composite(params, LOWER_COMPOSITE)


def tetrahedron_sides(params):
    params = as_params(params)
    if len(params) != 6:
        raise UsageError('the tetrahedron equation acts on 6 parameters')
    left = ''.join(TETRAHEDRON_FACTORS[f] for f in TETRAHEDRON_LEFT)
    right = ''.join(TETRAHEDRON_FACTORS[f] for f in TETRAHEDRON_RIGHT)
    return apply_composite(params, left), apply_composite(params, right)


def tetrahedron_check(params):
    left, right = tetrahedron_sides(params)
    return left == right


def tetrahedron_chart_consistency(params):
    """Both sides carry the chart of the start word to the chart of the end word."""
    left, right = tetrahedron_sides(params)
    start = parallel_chart(Word.parse(DIAGRAM_START, 3), params)
    end = Word.parse(DIAGRAM_END, 3)
    return start == parallel_chart(end, left) and start == parallel_chart(end, right)
