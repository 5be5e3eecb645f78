"""Naive dense reference implementations, kept independent of the package internals."""
import math

import numpy as np


def dense(graph):
    a = np.zeros((graph.left_count, graph.right_count))
    for i, j in graph.edges().tolist():
        a[i, j] = 1.0
    return a


def md_matrix(a):
    """W[alpha, beta] = 1/k_beta * sum_i a_i,alpha a_i,beta / k_i, built by explicit loops."""
    m, n = a.shape
    ku = a.sum(axis=1)
    ko = a.sum(axis=0)
    w = np.zeros((n, n))
    for al in range(n):
        for be in range(n):
            if ko[be] == 0:
                continue
            s = 0.0
            for i in range(m):
                if ku[i] > 0:
                    s += a[i, al] * a[i, be] / ku[i]
            w[al, be] = s / ko[be]
    return w


def hdh_matrix(a, lam):
    m, n = a.shape
    ku = a.sum(axis=1)
    ko = a.sum(axis=0)
    w = np.zeros((n, n))
    for al in range(n):
        for be in range(n):
            if ko[al] == 0 or ko[be] == 0:
                continue
            s = sum(a[i, al] * a[i, be] / ku[i] for i in range(m) if ku[i] > 0)
            w[al, be] = s / (ko[al] ** (1 - lam) * ko[be] ** lam)
    return w


def ucf(a, target):
    m, n = a.shape
    ku = a.sum(axis=1)
    out = np.zeros(n)
    for j in range(m):
        if j == target or ku[j] == 0 or ku[target] == 0:
            continue
        s = sum(a[target, al] * a[j, al] for al in range(n)) / math.sqrt(ku[target] * ku[j])
        for al in range(n):
            out[al] += s * a[j, al]
    return out


def icf(a, target):
    m, n = a.shape
    ko = a.sum(axis=0)
    out = np.zeros(n)
    for al in range(n):
        for be in range(n):
            if ko[al] == 0 or ko[be] == 0:
                continue
            s = sum(a[i, al] * a[i, be] for i in range(m)) / math.sqrt(ko[al] * ko[be])
            out[al] += s * a[target, be]
    return out


def sd(a, b, target):
    m, n = a.shape
    ku = a.sum(axis=1)
    ko = a.sum(axis=0)
    kc = b.sum(axis=0)
    f = np.zeros(m)
    for j in range(m):
        for o in range(n):
            if a[target, o] and a[j, o]:
                f[j] += 1.0 / ko[o]
        for c in range(b.shape[1]):
            if b[target, c] and b[j, c]:
                f[j] += 1.0 / kc[c]
    out = np.zeros(n)
    for j in range(m):
        if ku[j] == 0:
            continue
        for o in range(n):
            out[o] += a[j, o] * f[j] / ku[j]
    return out


def p_o_given_c(a, b, o, c):
    num = sum(b[u, c] * a[u, o] for u in range(a.shape[0]))
    den = sum(b[u, c] * a[u, al] for u in range(a.shape[0]) for al in range(a.shape[1]))
    return num / den if den else 0.0


def influence(a, b, u, o):
    """p(o, u) = sum_c p(o|c) p(c|u) with p(u) = 1, as an explicit triple sum."""
    kc = b[u].sum()
    return sum(p_o_given_c(a, b, o, c) * b[u, c] / kc for c in range(b.shape[1]))
