def solution(lst):
    return len(lst) == len(set(lst))
