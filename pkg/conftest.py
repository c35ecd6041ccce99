#!/bin/python3

'''Makes the repository root importable, so `erpscope` resolves without installation'''
