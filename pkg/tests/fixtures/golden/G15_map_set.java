import java.util.HashMap;
import java.util.HashSet;

class G15 {
    public static void main(String[] args) {
        HashMap<String, Integer> ages = new HashMap<String, Integer>();
        HashSet<String> seen = new HashSet<String>();
        ages.put("a", 1);
        seen.add("a");
        System.out.println(ages.size() + seen.size());
    }
}
