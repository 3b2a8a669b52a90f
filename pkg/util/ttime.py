# This file is part of the hornbody suite.
# Licensed under a 3-clause BSD style license - see LICENSE
import datetime
import time

class Time(object):
    '''
    Wall-clock and CPU timestamp.  The difference of two is a string
    for the log:

        t0 = Time()
        res = p1_p2_resultant()
        loginfo('Resultant:', Time() - t0)
    '''
    def __init__(self):
        self.wall = datetime.datetime.now()
        self.cpu = time.process_time()

    def wall_seconds_since(self, other):
        return (self.wall - other.wall).total_seconds()

    def cpu_seconds_since(self, other):
        return self.cpu - other.cpu

    def __sub__(self, other):
        return 'Wall: %.2f s, CPU: %.2f s' % (self.wall_seconds_since(other),
                                             self.cpu_seconds_since(other))
