import java.util.ArrayList;
import java.util.Collections;

class G17 {
    public static void main(String[] args) {
        ArrayList<Integer> items = new ArrayList<Integer>();
        items.add(4);
        items.add(1);
        Collections.sort(items);
        System.out.println(items.get(0));
    }
}
