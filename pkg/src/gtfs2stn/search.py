"""Label-setting flood over the time-expanded graph.

Because every link lands exactly at its target node's time, a node's label
is its own time; the search is a multi-seed Dijkstra that visits nodes in
key order (time forward, reversed time backward) and records the first link
that reached each node. A numba kernel handles large networks; a pure
Python twin keeps the package importable without it.
"""

from __future__ import annotations

import heapq

import numpy as np

UNREACHED = -2
SEED = -1

# Shift keys non-negative so (key, node) packs into one int64 heap entry.
_KEY_OFFSET = 200_000

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAS_NUMBA = False


def _flood_py(ptr, edge_link, edge_target, node_key, seeds, key_limit):
    n = len(node_key)
    pred = np.full(n, UNREACHED, dtype=np.int64)
    heap: list[int] = []
    for s in seeds:
        if pred[s] == UNREACHED and node_key[s] <= key_limit:
            pred[s] = SEED
            heapq.heappush(heap, ((int(node_key[s]) + _KEY_OFFSET) << 32) | int(s))
    while heap:
        u = heapq.heappop(heap) & 0xFFFFFFFF
        for j in range(ptr[u], ptr[u + 1]):
            v = edge_target[j]
            if pred[v] == UNREACHED and node_key[v] <= key_limit:
                pred[v] = edge_link[j]
                heapq.heappush(heap, ((int(node_key[v]) + _KEY_OFFSET) << 32) | int(v))
    return pred


if HAS_NUMBA:

    @numba.njit(cache=True)
    def _flood_nb(ptr, edge_link, edge_target, node_key, seeds, key_limit):  # pragma: no cover - compiled
        n = len(node_key)
        pred = np.full(n, UNREACHED, dtype=np.int64)
        # Every node is pushed at most once, so n slots suffice.
        heap = np.empty(n + 1, dtype=np.int64)
        size = 0
        for si in range(len(seeds)):
            s = seeds[si]
            if pred[s] == UNREACHED and node_key[s] <= key_limit:
                pred[s] = SEED
                i = size
                heap[i] = ((node_key[s] + _KEY_OFFSET) << 32) | s
                size += 1
                while i > 0 and heap[(i - 1) >> 1] > heap[i]:
                    p = (i - 1) >> 1
                    heap[p], heap[i] = heap[i], heap[p]
                    i = p
        while size > 0:
            u = heap[0] & 0xFFFFFFFF
            size -= 1
            heap[0] = heap[size]
            i = 0
            while True:
                left = 2 * i + 1
                if left >= size:
                    break
                small = left
                right = left + 1
                if right < size and heap[right] < heap[left]:
                    small = right
                if heap[i] <= heap[small]:
                    break
                heap[i], heap[small] = heap[small], heap[i]
                i = small
            for j in range(ptr[u], ptr[u + 1]):
                v = edge_target[j]
                if pred[v] == UNREACHED and node_key[v] <= key_limit:
                    pred[v] = edge_link[j]
                    i = size
                    heap[i] = ((node_key[v] + _KEY_OFFSET) << 32) | v
                    size += 1
                    while i > 0 and heap[(i - 1) >> 1] > heap[i]:
                        p = (i - 1) >> 1
                        heap[p], heap[i] = heap[i], heap[p]
                        i = p
        return pred


def flood(ptr, edge_link, edge_target, node_key, seeds, key_limit, use_numba: bool = True) -> np.ndarray:
    """Predecessor-link array: UNREACHED, SEED, or the link id that first reached the node.

    `ptr` is a CSR row pointer over nodes; position j in [ptr[u], ptr[u+1])
    is an out-edge of u landing on node edge_target[j] via link edge_link[j].
    Nodes whose key exceeds key_limit are never entered.
    """
    node_key = np.ascontiguousarray(node_key, dtype=np.int64)
    edge_link = np.ascontiguousarray(edge_link, dtype=np.int64)
    edge_target = np.ascontiguousarray(edge_target, dtype=np.int64)
    ptr = np.ascontiguousarray(ptr, dtype=np.int64)
    seeds = np.ascontiguousarray(seeds, dtype=np.int64)
    if HAS_NUMBA and use_numba:
        return _flood_nb(ptr, edge_link, edge_target, node_key, seeds, np.int64(key_limit))
    return _flood_py(ptr, edge_link, edge_target, node_key, seeds, int(key_limit))
