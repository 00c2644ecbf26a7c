"""Most-recently-used and most-frequently-used reference predictors."""

import heapq


class MRU:
    """Recommends apps from most to least recently launched."""

    name = "MRU"

    def __init__(self):
        self.recency = []

    def observe(self, app):
        try:
            self.recency.remove(app)
        except ValueError:
            pass
        self.recency.insert(0, app)

    def predict(self, k):
        return self.recency[:k]


class MFU:
    """Recommends apps by launch count, highest first; ties go to the lower id."""

    name = "MFU"

    def __init__(self):
        self.counts = {}

    def observe(self, app):
        self.counts[app] = self.counts.get(app, 0) + 1

    def predict(self, k):
        if k >= len(self.counts):
            return sorted(self.counts, key=lambda a: (-self.counts[a], a))
        return heapq.nsmallest(k, self.counts, key=lambda a: (-self.counts[a], a))

