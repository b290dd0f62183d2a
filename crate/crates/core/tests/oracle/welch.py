# Welch t on the per-trial ACS lists used by report_properties.rs and
# the CLI report test. Requires scipy for the cross-check line.
import statistics, math
C=[1.0]*30+[0.8]
A=[1/5,1/3,2/5]+[1/2]*3+[3/5]*3+[2/3]+[3/4]*4+[4/5]*4+[1.0]*11
B=[1/4,1/3]+[2/5]*2+[3/5]*3+[2/3]+[3/4]*3+[4/5]*6+[1.0]*11
def welch(a,b):
    va=statistics.variance(a)/len(a); vb=statistics.variance(b)/len(b)
    t=(statistics.mean(a)-statistics.mean(b))/math.sqrt(va+vb)
    df=(va+vb)**2/(va**2/(len(a)-1)+vb**2/(len(b)-1)); return t,df
for name,base in [("A",A),("B",B)]:
    print(name,len(base),round(statistics.mean(base)*100,1),round(statistics.stdev(base)*100,1), welch(C,base))
try:
    from scipy import stats
    print(stats.ttest_ind(C,A,equal_var=False), stats.ttest_ind(C,B,equal_var=False))
except ImportError: print("no scipy")
